// Tallies the isometry classes of a small grid by components and reduced crossing count.
#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <thread>

#include <mirrorknot/enumerate.hpp>

int main(int argc, char **argv)
{
    using namespace mirrorknot;
    const int p = argc > 1 ? std::atoi(argv[1]) : 2;
    const int q = argc > 2 ? std::atoi(argv[2]) : 2;
    try {
        const auto classes = isometry_classes(p, q, std::max(1u, std::thread::hardware_concurrency()));
        std::map<std::pair<int, int>, int> tally;
        std::map<std::string, int> links;
        for (const auto &c : classes) {
            ++tally[{c.components, c.crossings_after_reduce}];
            ++links[poly::to_string(c.normalized)];
        }
        std::cout << "RG[" << p << ',' << q << "]: " << classes.size() << " classes, " << links.size()
                  << " distinct normalized polynomials\n";
        std::cout << "components  crossings  classes\n";
        for (const auto &[key, n] : tally) {
            std::cout << "  " << key.first << "           " << key.second << "          " << n << '\n';
        }
    } catch (const error &e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
}

// Reduces a 4x3 grid diagram of a two-component unlink and prints each step.
#include <iostream>

#include <mirrorknot/codes.hpp>
#include <mirrorknot/invariants.hpp>
#include <mirrorknot/moves.hpp>

int main(int argc, char **argv)
{
    using namespace mirrorknot;
    const char *text = argc > 1 ? argv[1] : "RG[4,3]{{-2,-1,-1,2},{1,2,-1,1},{2,1,-1},{1,-2,-1},{1,-2,-1}}";
    try {
        const auto code = parse_matrix(text);
        std::cout << "start   " << serialize_matrix(code) << "  crossings " << code.crossing_count() << '\n';
        const auto result = reduce(code);
        for (const auto &m : result.log.steps) {
            std::cout << "  " << m.to_string() << '\n';
        }
        std::cout << "result  " << serialize_matrix(result.code) << "  crossings " << result.code.crossing_count()
                  << "  components " << count_components(result.code) << '\n';
        std::cout << "invariant " << poly::to_string(normalized_polynomial(result.code)) << '\n';
    } catch (const error &e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
}

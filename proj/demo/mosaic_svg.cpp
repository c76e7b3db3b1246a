// Prints the knot mosaic of a grid code and writes its SVG drawing.
#include <iostream>

#include <mirrorknot/codes.hpp>
#include <mirrorknot/mosaic.hpp>
#include <mirrorknot/svg.hpp>

int main(int argc, char **argv)
{
    using namespace mirrorknot;
    const char *text = argc > 1 ? argv[1] : "RG[3,3]{{2,-2,1},{1,1,-2},{-2,-2,-2},{1,1,1}}";
    const std::string out = argc > 2 ? argv[2] : "mosaic.svg";
    try {
        const auto code = parse_matrix(text);
        const auto m = to_mosaic(code);
        std::cout << mosaic_to_text(m);
        std::cout << "suitably connected: " << (suitably_connected(m) ? "yes" : "no") << '\n';
        write_svg(code, out);
        std::cout << "wrote " << out << '\n';
    } catch (const error &e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
}

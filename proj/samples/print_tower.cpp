// Prints the osculating tower and second fundamental form of a few classical
// varieties at a fixed point.

#include <iostream>

#include "osculata/osculata.hpp"

int main()
{
    using namespace osculata;
    const std::size_t seg11[] = {1, 1};
    for (const auto& spec : {gen_rnc(3), gen_veronese(2, 2), gen_segre(seg11)}) {
        const RatVector x(spec.nparams(), Rational{1, 2});
        const auto point = validate_point(spec, x);
        const auto tower = osculating_tower(spec, point, 4);
        std::cout << spec.name() << ": t =";
        for (auto t : tower.dims) std::cout << ' ' << t;
        const auto second = fundamental_form_system(spec, point, 2);
        const auto names = form_variable_names(second.nvars);
        std::cout << "\n  |II| =";
        for (const auto& g : second.forms) std::cout << "  " << format_poly(g, names);
        std::cout << "\n";
    }
}

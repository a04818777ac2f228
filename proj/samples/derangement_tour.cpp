// A short walk through the library: derangements three ways, the fractional
// part of e n!, and one integral checked against quadrature.

#include <iostream>

#include <ecount/ecount.hpp>

int main()
{
    using namespace ecount;

    for (long n : {5L, 10L, 20L}) {
        std::cout << "D_" << n << " = " << to_string(derangements(n))
                  << "  floor((n!+1)/e) = " << to_string(derangement_eq2(n))
                  << "  floor(n!/e + 1/n) = " << to_string(derangement_eq3(n)) << "\n";
    }

    auto fr = certified_floor_detailed(EForm(0, Rat(factorial(100)), 0));
    std::cout << "floor(e 100!) has " << to_string(fr.value).size() << " digits, decided at " << fr.precision_bits
              << " bits; exact sum agrees: " << std::boolalpha << (fr.value == partial_sum_pos(100)) << "\n";

    auto frac = eform_eval(frac_e_nfact(7), 80);
    std::cout << "{e 7!} in [" << frac.lo_decimal() << ", " << frac.hi_decimal() << "], between 1/8 and 1/7\n";

    auto paths = path_count_routes(8);
    std::cout << "simple paths between two vertices of K_8: " << to_string(paths.exact_sum)
              << " (floor route " << to_string(paths.floor_route) << ")\n";

    for (const auto& id : integral_identities(4))
        std::cout << id.label << ": " << describe(id.closed_form) << "  overlaps quadrature: " << id.overlap << "\n";
}

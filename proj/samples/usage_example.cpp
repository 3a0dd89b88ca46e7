// Library tour: a rank-one assembly, a line bundle Laplacian and a level-2
// operator, each expanded combinatorially and checked against char_poly.

#include <iostream>

#include "rankone/bundle.hpp"
#include "rankone/doomb.hpp"
#include "rankone/level2.hpp"

using namespace rankone;

int main() {
    // M = M_1 + 2 M_2 M_1 with M_i(v) = <alpha_i, v> e_i.
    const RankOneSystem sys(2, {Vector{1, 2}, Vector{0, 1}}, {Vector{3, -1}, Vector{1, Rational(1, 2)}});
    NCPoly p(2);
    p.add({0}, 1);
    p.add({1, 0}, 2);
    const Polynomial direct = char_poly(assemble(sys, p));
    const Polynomial summed = charpoly_combinatorial(sys, p);
    std::cout << "rank-one:  " << summed.str() << (direct == summed ? "  (matches)" : "  (MISMATCH)") << '\n';

    std::vector<DoombTerm> terms;
    mu_combinatorial(sys, p, 2, true, &terms);
    for (const auto& t : terms)
        std::cout << "  mu_2 term with " << t.graph.size() << " edges: weight " << t.weight << ", gram " << t.gram_det << '\n';

    // Triangle with holonomy 2 * 3 * 5 = 30.
    const LineBundle tri(3, {{0, 1, 2, 1, 0}, {1, 2, 3, 1, 0}, {2, 0, 5, 1, 0}});
    std::cout << "bundle:    " << char_poly(laplacian(tri)).str() << '\n';
    for (std::size_t k = 0; k <= 3; ++k) std::cout << "  mu_" << k << " over mixed forests = " << forman_mu(tri, k) << '\n';

    // Level 2 on three vertices.
    SkewTriple c(3);
    c.set(0, 1, 2, 1);
    c.set(1, 0, 2, -2);
    const Matrix m = level2_laplacian(c, tri);
    std::cout << "level 2:   " << char_poly(m).str() << '\n';
    bool ok = direct == summed;
    for (std::size_t k = 0; k <= 3; ++k) {
        const Rational rhs = level2_mu_rhs(c, tri, k);
        std::cout << "  mu_" << k << " over polyhedra = " << rhs << '\n';
        ok = ok && rhs == principal_minor_sum(m, k) && forman_mu(tri, k) == principal_minor_sum(laplacian(tri), k);
    }
    return ok ? 0 : 1;
}

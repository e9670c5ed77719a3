#ifndef QLK_GROEBNER_HPP
#define QLK_GROEBNER_HPP

#include <vector>

#include "qlk/poly.hpp"

namespace qlk {

// Full multivariate division: the returned remainder has no term divisible
// by any leading term of `basis`.
Poly reduce_full(Poly f, const std::vector<Poly>& basis, MonoOrder order);

// Reduced Groebner basis (monic, pairwise irreducible, deterministically
// sorted); idempotent. The zero ideal yields the empty basis.
std::vector<Poly> buchberger(std::vector<Poly> gens,
                             MonoOrder order = MonoOrder::Degrevlex);

bool ideal_member(const Poly& p, const std::vector<Poly>& groebner,
                  MonoOrder order);

bool is_unit_ideal(const std::vector<Poly>& groebner);

// Dimension of the zero locus from the leading-term staircase over the
// first `nvars` variables: the largest variable subset meeting no leading
// monomial's support. -1 for the unit ideal.
int staircase_dim(const std::vector<Poly>& groebner, int nvars,
                  MonoOrder order = MonoOrder::Degrevlex);

}  // namespace qlk

#endif

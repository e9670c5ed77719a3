#ifndef QLK_LIE_CORE_HPP
#define QLK_LIE_CORE_HPP

#include <string>
#include <vector>

#include "qlk/errors.hpp"

namespace qlk {

enum class Series : char { A = 'A', B = 'B', C = 'C', D = 'D',
                           E = 'E', F = 'F', G = 'G' };

std::string series_name(Series s);

// Root-system constants of one simple Lie algebra, everything in the
// simple-root integer basis.  Built once by build(); treat as immutable.
struct SimpleLieAlgebraData {
  Series series;
  int rank;
  std::vector<std::vector<int>> cartan;          // rank x rank
  std::vector<std::vector<int>> positive_roots;  // coords in simple roots
  std::vector<int> marks;                        // highest root theta
  std::vector<int> comarks;                      // theta-check
  // d_i with d_i*cartan[i][j] symmetric, min 1; (a_i|a_i) = 2*d_i/max(d)
  // in the normalization where long roots have squared length 2.
  std::vector<int> symmetrizer;

  int dim() const { return rank + 2 * static_cast<int>(positive_roots.size()); }
};

// Valid types: A_n n>=1, B_n n>=2, C_n n>=2, D_n n>=4, E_6/7/8, F_4, G_2.
// Throws Error(InvalidType) otherwise.
SimpleLieAlgebraData build(Series series, int rank);
SimpleLieAlgebraData build(char series, int rank);

int coxeter_number(const SimpleLieAlgebraData& g);        // 1 + sum marks
int dual_coxeter_number(const SimpleLieAlgebraData& g);   // 1 + sum comarks
int lacing_number(const SimpleLieAlgebraData& g);         // 1, 2 or 3

}  // namespace qlk

#endif

/*
   Copyright 2026 The modalg Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "modalg/matrix.hpp"

namespace modalg {

Matrix<MPoly> inverse_over_polynomials(const Matrix<MPoly>& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw not_invertible("non-square matrix");
  MPoly det = determinant(m);
  if (det.is_zero()) throw not_invertible("matrix is singular");
  MPoly zero = zero_like(det);
  Matrix<MPoly> adj(n, n, zero);
  if (n == 1) {
    adj(0, 0) = one_like(det);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Matrix<MPoly> minor(n - 1, n - 1, zero);
        for (std::size_t r = 0, rr = 0; r < n; ++r) {
          if (r == i) continue;
          for (std::size_t c = 0, cc = 0; c < n; ++c) {
            if (c == j) continue;
            minor(rr, cc++) = m(r, c);
          }
          ++rr;
        }
        MPoly cof = determinant(minor);
        adj(j, i) = (i + j) % 2 ? -cof : cof;
      }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto q = try_div(adj(i, j), det);
      if (!q) throw not_invertible("determinant is not a unit of the polynomial ring");
      adj(i, j) = *q;
    }
  return adj;
}

}  // namespace modalg

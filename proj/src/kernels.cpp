#include <enriq/poly.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace enriq {

// OpenMP multiply: the rows of the term-product grid are split across threads,
// each thread accumulates a locally sorted partial product, and the partials
// are merged in fixed chunk order so the result is identical to the serial
// kernel.
Poly poly_mul_parallel(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero())
    return Poly::zero(a.reg() ? a.reg() : b.reg(), a.field() ? a.field() : b.field());
  const Field& F = *a.field();
  const auto& ta = a.terms();
  const auto& tb = b.terms();

  int nchunks = 1;
#ifdef _OPENMP
  nchunks = std::max(1, std::min<int>(omp_get_max_threads() * 2, (int)ta.size()));
#endif
  std::vector<Poly> partial(static_cast<std::size_t>(nchunks));

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int c = 0; c < nchunks; ++c) {
    std::size_t lo = ta.size() * (std::size_t)c / nchunks;
    std::size_t hi = ta.size() * (std::size_t)(c + 1) / nchunks;
    std::vector<Term> acc;
    acc.reserve((hi - lo) * tb.size());
    for (std::size_t i = lo; i < hi; ++i) {
      for (const auto& t2 : tb) {
        Expo e = ta[i].exp;
        for (std::size_t k = 0; k < e.size(); ++k) e[k] += t2.exp[k];
        acc.push_back(Term{std::move(e), F.mul(ta[i].coeff, t2.coeff)});
      }
    }
    partial[(std::size_t)c] = Poly::from_terms(a.reg(), a.field(), std::move(acc));
  }

  // pairwise deterministic merge
  while (partial.size() > 1) {
    std::vector<Poly> next;
    for (std::size_t i = 0; i + 1 < partial.size(); i += 2) next.push_back(partial[i] + partial[i + 1]);
    if (partial.size() & 1) next.push_back(partial.back());
    partial = std::move(next);
  }
  return partial[0];
}

} // namespace enriq

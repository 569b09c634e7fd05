#ifndef ENRIQ_EXTENSION_HPP
#define ENRIQ_EXTENSION_HPP

#include <enriq/factor.hpp>

namespace enriq {

// Canonical degree-d extension of `base`: GF(2^(k*d)) with the canonical
// modulus.  d = 1 returns base itself.
FieldPtr extension_field(const FieldPtr& base, unsigned d);

// Field embedding src -> dst (src degree must divide dst degree).  The image
// of the src generator is the smallest root (by bit value) of the src modulus
// in dst; the map is cached and deterministic.
class Embedding {
public:
  Embedding(FieldPtr src, FieldPtr dst);
  std::uint64_t operator()(std::uint64_t a) const;
  const FieldPtr& src() const { return src_; }
  const FieldPtr& dst() const { return dst_; }

private:
  FieldPtr src_, dst_;
  std::uint64_t gen_image_;
};

const Embedding& get_embedding(const FieldPtr& src, const FieldPtr& dst);

// Coefficientwise embedding of a polynomial into a larger field.
Poly embed_poly(const Poly& p, const FieldPtr& dst);

} // namespace enriq

#endif

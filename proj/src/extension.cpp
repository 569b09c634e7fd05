#include <enriq/extension.hpp>

#include <map>
#include <mutex>

namespace enriq {

FieldPtr extension_field(const FieldPtr& base, unsigned d) {
  ENRIQ_CHECK(d >= 1, "extension degree must be positive");
  if (d == 1) return base;
  return Field::canonical(base->degree() * d);
}

Embedding::Embedding(FieldPtr src, FieldPtr dst) : src_(std::move(src)), dst_(std::move(dst)) {
  ENRIQ_CHECK(dst_->degree() % src_->degree() == 0, "embedding degree mismatch");
  if (src_->degree() == 1) {
    gen_image_ = 1;
    return;
  }
  if (src_->same(*dst_)) {
    gen_image_ = src_->generator();
    return;
  }
  // roots of the src modulus (a GF(2) polynomial) inside dst
  std::uint64_t m = src_->modulus();
  UPoly f(dst_);
  for (int i = 0; i <= gf2x::degree(m); ++i) f.c.push_back((m >> i) & 1);
  auto rs = roots_in_field(f, 0);
  ENRIQ_CHECK(!rs.empty(), "modulus has no root in extension");
  gen_image_ = rs.front();
}

std::uint64_t Embedding::operator()(std::uint64_t a) const {
  if (src_->degree() == 1 || src_->same(*dst_)) return a;
  // Horner in the generator image over the coordinate bits of a.
  std::uint64_t acc = 0;
  for (int i = gf2x::degree(a | 1); i >= 0; --i) {
    acc = dst_->mul(acc, gen_image_);
    if ((a >> i) & 1) acc ^= 1;
  }
  return acc;
}

const Embedding& get_embedding(const FieldPtr& src, const FieldPtr& dst) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, std::uint64_t>, std::unique_ptr<Embedding>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(src->modulus(), dst->modulus());
  auto& slot = cache[key];
  if (!slot) slot = std::make_unique<Embedding>(src, dst);
  return *slot;
}

Poly embed_poly(const Poly& p, const FieldPtr& dst) {
  if (p.field()->same(*dst)) return p;
  const Embedding& e = get_embedding(p.field(), dst);
  return p.map_coefficients([&](std::uint64_t c) { return e(c); }, dst);
}

} // namespace enriq

#include <enriq/field.hpp>

#include <map>
#include <mutex>

namespace enriq {
namespace gf2x {

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
  }
  return r;
}

std::uint64_t mod(std::uint64_t a, std::uint64_t m) {
  int dm = degree(m);
  ENRIQ_CHECK(dm >= 0, "gf2x::mod by zero");
  int da = degree(a);
  while (da >= dm) {
    a ^= m << (da - dm);
    da = degree(a);
  }
  return a;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  // Shift-and-add with eager reduction so intermediates stay below 2^63.
  int dm = degree(m);
  std::uint64_t r = 0;
  a = mod(a, m);
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (degree(a) >= dm) a ^= m;
  }
  return r;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a = mod(a, b);
    std::swap(a, b);
  }
  return a;
}

static std::uint64_t powx_2e(std::uint64_t e, std::uint64_t m) {
  // x^(2^e) mod m by e successive squarings.
  std::uint64_t r = mod(2, m);
  for (std::uint64_t i = 0; i < e; ++i) r = mulmod(r, r, m);
  return r;
}

bool irreducible(std::uint64_t f) {
  int d = degree(f);
  if (d < 1) return false;
  if (d == 1) return true;
  if ((f & 1) == 0) return false; // divisible by x
  // x^(2^d) == x mod f
  if (powx_2e(d, f) != mod(2, f)) return false;
  // gcd(x^(2^(d/p)) - x, f) == 1 for prime p | d
  int n = d;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    if (gcd(powx_2e(d / p, f) ^ mod(2, f), f) != 1) return false;
  }
  if (n > 1) {
    if (gcd(powx_2e(d / n, f) ^ mod(2, f), f) != 1) return false;
  }
  return true;
}

std::uint64_t canonical_modulus(unsigned k) {
  ENRIQ_CHECK(k >= 1 && k <= 62, "field degree out of range");
  static std::mutex mu;
  static std::map<unsigned, std::uint64_t> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  for (std::uint64_t f = (1ULL << k) | 1;; f += 2) {
    if (irreducible(f)) {
      cache[k] = f;
      return f;
    }
  }
}

std::string to_string(std::uint64_t f, const std::string& var) {
  if (f == 0) return "0";
  std::string s;
  for (int i = degree(f); i >= 0; --i) {
    if (!((f >> i) & 1)) continue;
    if (!s.empty()) s += "+";
    if (i == 0)
      s += "1";
    else if (i == 1)
      s += var;
    else
      s += var + "^" + std::to_string(i);
  }
  return s;
}

} // namespace gf2x

Field::Field(std::uint64_t modulus) : mod_(modulus) {
  int d = gf2x::degree(modulus);
  if (d < 1) throw MathError("field modulus must have degree >= 1");
  if (!gf2x::irreducible(modulus))
    throw MathError("reducible modulus: " + gf2x::to_string(modulus));
  k_ = static_cast<unsigned>(d);
}

std::shared_ptr<const Field> Field::make(std::uint64_t modulus) {
  return std::shared_ptr<const Field>(new Field(modulus));
}

std::shared_ptr<const Field> Field::gf2() {
  static std::shared_ptr<const Field> f = make(0b10); // modulus w
  return f;
}

std::shared_ptr<const Field> Field::canonical(unsigned k) {
  if (k == 1) return gf2();
  static std::mutex mu;
  static std::map<unsigned, std::shared_ptr<const Field>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[k];
  if (!slot) slot = make(gf2x::canonical_modulus(k));
  return slot;
}

std::uint64_t Field::pow(std::uint64_t a, unsigned long long e) const {
  std::uint64_t r = 1;
  a = gf2x::mod(a, mod_);
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t Field::inv(std::uint64_t a) const {
  if (a == 0) throw MathError("inverse of zero");
  if (k_ >= 2) {
    // a^(2^k - 2)
    std::uint64_t e = ((k_ >= 63) ? ~0ULL : ((1ULL << k_) - 2));
    return pow(a, e);
  }
  return 1;
}

std::uint64_t Field::sqrt(std::uint64_t a) const {
  std::uint64_t r = a;
  for (unsigned i = 0; i + 1 < k_; ++i) r = mul(r, r);
  return r;
}

std::vector<std::uint64_t> Field::enumerate() const {
  ENRIQ_CHECK(k_ <= 20, "field too large to enumerate");
  std::vector<std::uint64_t> out;
  out.reserve(1ULL << k_);
  for (std::uint64_t v = 0; v < (1ULL << k_); ++v) out.push_back(v);
  return out;
}

std::string Field::to_string(std::uint64_t a) const { return gf2x::to_string(a); }

} // namespace enriq

#ifndef ENRIQ_SINGCLASS_HPP
#define ENRIQ_SINGCLASS_HPP

#include <enriq/geometry.hpp>

namespace enriq {

// Characteristic-2 double point classes.  D and E types carry the coindex r.
struct SingClass {
  enum Kind { Smooth, A, D, E, E12, Unclassified } kind = Unclassified;
  int n = 0;
  int r = 0;
  std::string reason;

  static SingClass smooth() { return {Smooth, 0, 0, ""}; }
  static SingClass a(int n) { return {A, n, 0, ""}; }
  static SingClass d(int n, int r) { return {D, n, r, ""}; }
  static SingClass e(int n, int r) { return {E, n, r, ""}; }
  static SingClass e12() { return {E12, 12, 0, ""}; }
  static SingClass unclassified(std::string why) { return {Unclassified, 0, 0, std::move(why)}; }

  // the index: A_n -> n, D_n -> n, E_n -> n, E12 -> 12
  int index() const;
  std::string str() const;

  friend bool operator==(const SingClass& a, const SingClass& b) {
    return a.kind == b.kind && a.n == b.n && a.r == b.r;
  }
  friend bool operator<(const SingClass& a, const SingClass& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.n != b.n) return a.n < b.n;
    return a.r < b.r;
  }
};

SingClass parse_sing_class(const std::string& text);

// Quotient image of an RDP/EDP under a fixed-point-free p-closed derivation.
SingClass image_type(const SingClass& c);

// Passage to the canonical covering of the resolved quotient.
std::vector<SingClass> lift_to_cover(const SingClass& c);

// ---- jet classification ----

struct QuadraticAnalysis {
  enum Branch { ABranch, DEBranch } branch = DEBranch;
  int rank = 0;      // rank of the alternating form (0 or 2)
  Poly transformed;  // jet after the linear change: quadratic part x*y (+ c z^2) or z^2
};

// Rank analysis of the degree-2 part and normalizing linear change; the field
// may be extended (quadratic) to split an anisotropic plane.
QuadraticAnalysis quadratic_analysis(const Poly& jet, long long jet_order);

// A-branch: removes all monomials divisible by x or y except x*y; returns
// A(m-1) where m is the order of the residual in z.
SingClass split_hyperbolic(const Poly& jet, long long jet_order);

// dim k[[x,y,z]] / (F, F_x, F_y, F_z) at the origin.
long long tjurina(const Poly& jet);

struct BlowupChild {
  int chart = 0; // 0,1,2: which variable was the divisor coordinate
  std::vector<std::uint64_t> point;
  FieldPtr field;
  Poly jet;            // translated strict transform
  long long jet_order; // = parent order - 2
};

// Point blow-up of the ambient 3-space; children are the singular points of
// the strict transform on the exceptional divisor, deduplicated across charts.
std::vector<BlowupChild> blowup_charts(const Poly& jet, long long jet_order,
                                       int max_ext_degree = 4);

// Recursive D/E classification through the self-built reduction table.
SingClass dynkin_via_blowup(const Poly& jet, long long jet_order);

// Newton-polygon-guided recognition of z^2 + x^3 + y^7 + eps with eps in
// (x^5, x^3 y, x^2 y^3, x y^4, y^9).
bool detect_E12(const Poly& jet, long long jet_order);

// Full pipeline for a raw 3-variable jet.
SingClass classify_jet(const Poly& jet, long long jet_order);

// local_model + classify_jet, with automatic jet-order doubling up to 96.
SingClass classify_point(const Atlas& atlas, const SurfacePoint& p, long long jet_order = 24);

// ---- the normal-form asset ----

struct NormalFormEntry {
  SingClass cls;
  Poly jet; // over GF(2), variables x,y,z
  long long tau = -1;
};

class NormalFormTable {
public:
  static const NormalFormTable& instance();

  const std::vector<NormalFormEntry>& entries() const { return entries_; }
  // tau of the stored normal form of a class; -1 when absent
  long long tau_of(const SingClass& c) const;
  // unique coindex with matching tau, if any
  std::optional<int> coindex_by_tau(SingClass::Kind kind, int n, long long tau) const;
  // reduction lookup: (sorted child symbols, parent tau) -> (kind, n)
  std::optional<std::pair<SingClass::Kind, int>> reduce(const std::vector<std::string>& children,
                                                        long long tau) const;
  std::string reduction_key_str(const std::vector<std::string>& children, long long tau) const;

private:
  NormalFormTable();
  std::vector<NormalFormEntry> entries_;
  std::map<std::string, std::pair<SingClass::Kind, int>> reduction_;
};

} // namespace enriq

#endif

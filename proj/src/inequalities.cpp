#include "numrad/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "numrad/eig.hpp"
#include "numrad/functional.hpp"
#include "numrad/quantities.hpp"

namespace numrad {

namespace {

const double kTwoSqrt2 = 2.0 * std::numbers::sqrt2;

std::string arity_message(const std::string& id, std::size_t expected, std::size_t got) {
  std::ostringstream os;
  os << id << ": expects " << expected << " input matrices, got " << got;
  return os.str();
}

double sq(double x) { return x * x; }

double nonneg_sqrt(double x) { return std::sqrt(std::max(0.0, x)); }

// Shorthands over the quantities module.
struct Ops {
  const Settings& s;

  double w(const CMatrix& a) const { return numerical_radius(a, s).value; }
  static double norm(const CMatrix& a) { return op_norm(a); }
  static double norm_sq(const CMatrix& a) { return op_norm(a * a); }  // ||A^2||
  static double r_abs_product(const CMatrix& a) {
    const AbsParts p = abs_parts(a);
    return spectral_radius_psd_product(p.abs_a, p.abs_a_star);
  }
  // r(B): exact for Hermitian input, Gelfand iteration otherwise.
  static double spectral_radius(const CMatrix& b) {
    if (hermitian_residual(b) <= kHermitianTol * (1.0 + frobenius_norm(b)))
      return spectral_radius_hermitian(b);
    return spectral_radius_general(b);
  }
  // c^2(Re A) + c^2(Im A)
  static double crawford_parts_sq(const CMatrix& a) {
    const CartesianParts p = cartesian_parts(a);
    return sq(crawford_hermitian(p.re)) + sq(crawford_hermitian(p.im));
  }
  static CMatrix signed_sum(const CMatrix& x, const CMatrix& y, Sign sign) {
    return sign == Sign::minus ? x - y : x + y;
  }
};

class ReportBuilder {
 public:
  ReportBuilder(std::string id, Sign sign, std::span<const CMatrix> inputs, double tol) : tol_(tol) {
    r_.id = std::move(id);
    r_.sign = sign;
    r_.inputs_digest = digest_hex(canonical_digest(inputs));
  }

  ReportBuilder& link(std::string label, double lhs, double rhs) {
    r_.links.push_back({std::move(label), lhs, rhs, rhs - lhs, within_bound(lhs, rhs, tol_)});
    return *this;
  }

  ReportBuilder& detail(const std::string& key, double v) {
    r_.details[key] = v;
    return *this;
  }

  BoundReport finish(double lhs, double rhs) {
    r_.applicable = true;
    r_.lhs = lhs;
    r_.rhs = rhs;
    r_.slack = rhs - lhs;
    if (r_.links.empty()) {
      r_.holds = within_bound(lhs, rhs, tol_);
    } else {
      r_.holds = std::all_of(r_.links.begin(), r_.links.end(),
                             [](const LinkReport& l) { return l.holds; });
    }
    return std::move(r_);
  }

  BoundReport not_applicable(std::string reason) {
    r_.applicable = false;
    r_.holds = false;
    r_.reason = std::move(reason);
    return std::move(r_);
  }

 private:
  BoundReport r_;
  double tol_;
};

using Evaluator =
    std::function<BoundReport(ReportBuilder&, std::span<const CMatrix>, Sign, const Ops&,
                              const EvalParams&)>;

struct Registered {
  CatalogEntry entry;
  Evaluator eval;
};

// ---- unary entries ---------------------------------------------------------

BoundReport eval_eqv(ReportBuilder& b, std::span<const CMatrix> in, Sign, const Ops& o,
                     const EvalParams&) {
  const double w = o.w(in[0]);
  const double nrm = Ops::norm(in[0]);
  b.link("||A||/2 <= w(A)", 0.5 * nrm, w).link("w(A) <= ||A||", w, nrm);
  return b.finish(w, nrm);
}

BoundReport eval_kit05(ReportBuilder& b, std::span<const CMatrix> in, Sign, const Ops& o,
                       const EvalParams&) {
  const CMatrix& a = in[0];
  const CMatrix as = adjoint(a);
  const double s = Ops::norm(as * a + a * as);
  const double w2 = sq(o.w(a));
  b.link("||A*A+AA*||/4 <= w^2(A)", 0.25 * s, w2).link("w^2(A) <= ||A*A+AA*||/2", w2, 0.5 * s);
  return b.finish(w2, 0.5 * s);
}

BoundReport eval_kit03(ReportBuilder& b, std::span<const CMatrix> in, Sign, const Ops& o,
                       const EvalParams&) {
  const CMatrix& a = in[0];
  const double n2 = Ops::norm_sq(a);
  b.detail("norm_A2", n2);
  return b.finish(o.w(a), 0.5 * (Ops::norm(a) + std::sqrt(n2)));
}

BoundReport eval_bp_alpha(ReportBuilder& b, std::span<const CMatrix> in, Sign, const Ops& o,
                          const EvalParams&) {
  const QuantityResult q = alpha_min_bound(in[0], o.s);
  b.detail("alpha_star", q.alpha_star.value_or(0.0));
  return b.finish(sq(o.w(in[0])), q.value);
}

BoundReport eval_bp_chain(ReportBuilder& b, std::span<const CMatrix> in, Sign, const Ops& o,
                          const EvalParams&) {
  const CMatrix& a = in[0];
  const CMatrix as = adjoint(a);
  const CartesianParts p = cartesian_parts(a);
  const double t1 = 0.25 * Ops::norm(as * a + a * as);
  // ||A + A*|| = 2||Re A||, ||A - A*|| = 2||Im A||, and c(A + A*) = 2c(Re A),
  // c(A - A*) = c(2i Im A) = 2c(Im A).
  const double sum_norms = sq(2.0 * Ops::norm(p.re)) + sq(2.0 * Ops::norm(p.im));
  const double t2 = sum_norms / 8.0;
  const double c_re = 2.0 * crawford_hermitian(p.re);
  const double c_im = 2.0 * crawford_hermitian(p.im);
  const double t3 = t2 + sq(c_re) / 8.0 + sq(c_im) / 8.0;
  const double t4 = sq(o.w(a));
  b.detail("c_A_plus_Astar", c_re).detail("c_A_minus_Astar", c_im);
  b.link("||A*A+AA*||/4 <= (||A+A*||^2+||A-A*||^2)/8", t1, t2)
      .link("... <= ... + (c^2(A+A*) + c^2(A-A*))/8", t2, t3)
      .link("... <= w^2(A)", t3, t4);
  return b.finish(t1, t4);
}

BoundReport eval_main(ReportBuilder& b, std::span<const CMatrix> in, Sign, const Ops& o,
                      const EvalParams&) {
  const CMatrix& a = in[0];
  const AbsParts parts = abs_parts(a);
  const PsdProductRadius r = spectral_radius_psd_product_detail(parts.abs_a, parts.abs_a_star);
  b.detail("r_abs_product", r.value).detail("r_route_discrepancy", r.discrepancy);
  return b.finish(o.w(a), 0.5 * (Ops::norm(a) + std::sqrt(r.value)));
}

BoundReport eval_main_dom(ReportBuilder& b, std::span<const CMatrix> in, Sign, const Ops& o,
                          const EvalParams&) {
  const CMatrix& a = in[0];
  const AbsParts parts = abs_parts(a);
  const double r = spectral_radius_psd_product(parts.abs_a, parts.abs_a_star);
  const CMatrix prod = parts.abs_a * parts.abs_a_star;
  const double w = o.w(prod);
  const double n2 = Ops::norm_sq(a);
  b.detail("norm_abs_product", Ops::norm(prod));
  b.link("r(|A||A*|) <= w(|A||A*|)", r, w).link("w(|A||A*|) <= ||A^2||", w, n2);
  return b.finish(r, n2);
}

BoundReport eval_bp_self(ReportBuilder& b, std::span<const CMatrix> in, Sign, const Ops& o,
                         const EvalParams&) {
  const CMatrix& a = in[0];
  const CMatrix as = adjoint(a);
  const double c2 = Ops::crawford_parts_sq(a);
  b.detail("crawford_parts_sq", c2);
  return b.finish(Ops::norm(a * as + as * a), 4.0 * (sq(o.w(a)) - 0.5 * c2));
}

BoundReport eval_selfmu(ReportBuilder& b, std::span<const CMatrix> in, Sign, const Ops&,
                        const EvalParams&) {
  const CMatrix& a = in[0];
  const CMatrix as = adjoint(a);
  return b.finish(Ops::norm(a * as + as * a), sq(Ops::norm(a)) + Ops::norm_sq(a));
}

// ---- binary entries --------------------------------------------------------

BoundReport eval_ksum(ReportBuilder& b, std::span<const CMatrix> in, Sign, const Ops&,
                      const EvalParams&) {
  const CMatrix& p = in[0];
  const CMatrix& q = in[1];
  for (const CMatrix* m : {&p, &q}) {
    const double res = hermitian_residual(*m);
    if (res > kHermitianTol * (1.0 + frobenius_norm(*m))) {
      b.detail("hermitian_residual", res);
      return b.not_applicable("inputs must be positive semidefinite (not Hermitian)");
    }
    const PsdCheck c = check_psd(*m);
    if (!c.psd) {
      b.detail("min_eigenvalue", c.min_eigenvalue);
      return b.not_applicable("inputs must be positive semidefinite");
    }
  }
  const double cross = Ops::norm(sqrt_psd(p) * sqrt_psd(q));
  return b.finish(Ops::norm(p + q), std::max(Ops::norm(p), Ops::norm(q)) + cross);
}

// Shared precondition of the product bounds: |A| B = B* |A|.
std::optional<BoundReport> require_intertwined(ReportBuilder& b, std::span<const CMatrix> in,
                                               const Ops& o) {
  const double res = intertwining_residual(in[0], in[1]);
  const double limit = o.s.tol_intertwine * (1.0 + Ops::norm(in[0]) * Ops::norm(in[1]));
  b.detail("intertwining_residual", res);
  if (res > limit) {
    std::ostringstream os;
    os << "requires |A|B = B*|A| (residual " << res << " > " << limit << ")";
    return b.not_applicable(os.str());
  }
  return std::nullopt;
}

BoundReport eval_gen_fg(ReportBuilder& b, std::span<const CMatrix> in, Sign, const Ops& o,
                        const EvalParams& p) {
  if (!(p.s >= 0.0 && p.s <= 1.0)) throw std::invalid_argument("I-GEN-FG: s must lie in [0, 1]");
  if (auto na = require_intertwined(b, in, o)) return std::move(*na);
  const CMatrix& a = in[0];
  const CMatrix& bm = in[1];
  const AbsParts parts = abs_parts(a);
  const CMatrix f = power_psd(parts.abs_a, p.s);
  const CMatrix g = power_psd(parts.abs_a_star, 1.0 - p.s);
  const double rb = Ops::spectral_radius(bm);
  const double rhs =
      0.5 * rb * (std::max(sq(Ops::norm(f)), sq(Ops::norm(g))) + Ops::norm(f * g));
  b.detail("s", p.s).detail("r_B", rb);
  return b.finish(o.w(a * bm), rhs);
}

BoundReport eval_prod(ReportBuilder& b, std::span<const CMatrix> in, Sign, const Ops& o,
                      const EvalParams&) {
  if (auto na = require_intertwined(b, in, o)) return std::move(*na);
  const CMatrix& a = in[0];
  const CMatrix& bm = in[1];
  const double main_a = Ops::norm(a) + std::sqrt(Ops::r_abs_product(a));
  const double main_b = Ops::norm(bm) + std::sqrt(Ops::r_abs_product(bm));
  const double rb = Ops::spectral_radius(bm);
  const double lhs = o.w(a * bm);
  const double mid = 0.5 * rb * main_a;
  const double last = 0.25 * main_b * main_a;
  b.detail("r_B", rb);
  b.link("w(AB) <= r(B)/2 (||A|| + sqrt r(|A||A*|))", lhs, mid)
      .link("... <= (||B|| + sqrt r(|B||B*|))(||A|| + sqrt r(|A||A*|))/4", mid, last);
  return b.finish(lhs, last);
}

BoundReport eval_alomari(ReportBuilder& b, std::span<const CMatrix> in, Sign, const Ops& o,
                         const EvalParams&) {
  if (auto na = require_intertwined(b, in, o)) return std::move(*na);
  const CMatrix& a = in[0];
  const CMatrix& bm = in[1];
  const double rhs = 0.25 * (Ops::norm(bm) + std::sqrt(Ops::norm_sq(bm))) *
                     (Ops::norm(a) + std::sqrt(Ops::norm_sq(a)));
  return b.finish(o.w(a * bm), rhs);
}

double commutator_w(const Ops& o, const CMatrix& a, const CMatrix& bm, Sign sign) {
  return o.w(Ops::signed_sum(a * bm, bm * a, sign));
}

BoundReport eval_fh(ReportBuilder& b, std::span<const CMatrix> in, Sign sign, const Ops& o,
                    const EvalParams&) {
  const CMatrix& a = in[0];
  const CMatrix& bm = in[1];
  return b.finish(commutator_w(o, a, bm, sign), kTwoSqrt2 * Ops::norm(bm) * o.w(a));
}

BoundReport eval_hk(ReportBuilder& b, std::span<const CMatrix> in, Sign sign, const Ops& o,
                    const EvalParams&) {
  const CMatrix& a = in[0];
  const CMatrix& bm = in[1];
  const CartesianParts p = cartesian_parts(a);
  const double gap = std::abs(sq(Ops::norm(p.re)) - sq(Ops::norm(p.im)));
  const double rhs = kTwoSqrt2 * Ops::norm(bm) * nonneg_sqrt(sq(o.w(a)) - 0.5 * gap);
  b.detail("re_im_norm_gap", gap);
  return b.finish(commutator_w(o, a, bm, sign), rhs);
}

// 2 sqrt2 ||other|| sqrt(w^2(m) - (c^2(Re m) + c^2(Im m))/2)
double crawford_refined(const Ops& o, const CMatrix& m, double other_norm) {
  return kTwoSqrt2 * other_norm * nonneg_sqrt(sq(o.w(m)) - 0.5 * Ops::crawford_parts_sq(m));
}

BoundReport eval_comm_a(ReportBuilder& b, std::span<const CMatrix> in, Sign sign, const Ops& o,
                        const EvalParams&) {
  const CMatrix& a = in[0];
  const CMatrix& bm = in[1];
  return b.finish(commutator_w(o, a, bm, sign), crawford_refined(o, a, Ops::norm(bm)));
}

BoundReport eval_comm_b(ReportBuilder& b, std::span<const CMatrix> in, Sign sign, const Ops& o,
                        const EvalParams&) {
  const CMatrix& a = in[0];
  const CMatrix& bm = in[1];
  return b.finish(commutator_w(o, a, bm, sign), crawford_refined(o, bm, Ops::norm(a)));
}

BoundReport eval_mu(ReportBuilder& b, std::span<const CMatrix> in, Sign, const Ops&,
                    const EvalParams&) {
  const CMatrix& a = in[0];
  const CMatrix& bm = in[1];
  return b.finish(Ops::norm(a * adjoint(a) + adjoint(bm) * bm), mu(a, bm));
}

BoundReport eval_mu_max(ReportBuilder& b, std::span<const CMatrix> in, Sign, const Ops&,
                        const EvalParams&) {
  const CMatrix& a = in[0];
  const CMatrix& bm = in[1];
  const double rhs = std::max(sq(Ops::norm(a)), sq(Ops::norm(bm))) + Ops::norm(bm * a);
  return b.finish(mu(a, bm), rhs);
}

BoundReport eval_comm_mu(ReportBuilder& b, std::span<const CMatrix> in, Sign sign, const Ops& o,
                         const EvalParams&) {
  const CMatrix& a = in[0];
  const CMatrix& bm = in[1];
  const double rhs = std::sqrt((sq(Ops::norm(a)) + Ops::norm_sq(a)) *
                               (sq(Ops::norm(bm)) + Ops::norm_sq(bm)));
  return b.finish(commutator_w(o, a, bm, sign), rhs);
}

// ---- four-input entries: (A, B, X, Y) unless noted -------------------------

BoundReport eval_axb(ReportBuilder& b, std::span<const CMatrix> in, Sign sign, const Ops& o,
                     const EvalParams&) {
  const CMatrix& a = in[0];
  const CMatrix& bm = in[1];
  const CMatrix& x = in[2];
  const CMatrix& y = in[3];
  const double lhs = o.w(Ops::signed_sum(a * x * bm, bm * y * a, sign));
  const double scale_xy = std::max(Ops::norm(x), Ops::norm(y));
  return b.finish(lhs, scale_xy * crawford_refined(o, a, Ops::norm(bm)));
}

BoundReport eval_ok(ReportBuilder& b, std::span<const CMatrix> in, Sign sign, const Ops& o,
                    const EvalParams&) {
  const CMatrix& a = in[0];
  const CMatrix& bm = in[1];
  const CMatrix& x = in[2];
  const CMatrix& y = in[3];
  const double lhs = sq(o.w(Ops::signed_sum(a * x, bm * y, sign)));
  const double rhs =
      Ops::norm(a * adjoint(a) + adjoint(y) * y) * Ops::norm(adjoint(x) * x + bm * adjoint(bm));
  return b.finish(lhs, rhs);
}

// Inputs in block order (A, X, Y, B).
BoundReport eval_hd_block(ReportBuilder& b, std::span<const CMatrix> in, Sign, const Ops&,
                          const EvalParams&) {
  const CMatrix& a = in[0];
  const CMatrix& x = in[1];
  const CMatrix& y = in[2];
  const CMatrix& bm = in[3];
  const CMatrix norms = CMatrix::from_rows({{Ops::norm(a), Ops::norm(x)},
                                            {Ops::norm(y), Ops::norm(bm)}});
  return b.finish(Ops::norm(block2(a, x, y, bm)), Ops::norm(norms));
}

BoundReport eval_muxy(ReportBuilder& b, std::span<const CMatrix> in, Sign sign, const Ops& o,
                      const EvalParams&) {
  const CMatrix& a = in[0];
  const CMatrix& bm = in[1];
  const CMatrix& x = in[2];
  const CMatrix& y = in[3];
  const double mu_ay = mu(a, y);
  const double mu_bx = mu(bm, x);
  b.detail("mu_A_Y", mu_ay).detail("mu_B_X", mu_bx);
  return b.finish(o.w(Ops::signed_sum(a * x, bm * y, sign)), std::sqrt(mu_ay * mu_bx));
}

const std::vector<Registered>& registry() {
  static const std::vector<Registered> reg = [] {
    std::vector<Registered> r;
    auto add = [&](std::string id, std::size_t arity, bool sgn, std::vector<std::string> names,
                   std::string pre, std::string formula, Evaluator e) {
      r.push_back({{std::move(id), arity, sgn, std::move(names), std::move(pre),
                    std::move(formula)},
                   std::move(e)});
    };
    const std::vector<std::string> a1{"A"};
    const std::vector<std::string> ab{"A", "B"};
    const std::vector<std::string> abxy{"A", "B", "X", "Y"};
    add("I-EQV", 1, false, a1, "none", "||A||/2 <= w(A) <= ||A||", eval_eqv);
    add("I-KIT05", 1, false, a1, "none",
        "||A*A + AA*||/4 <= w^2(A) <= ||A*A + AA*||/2", eval_kit05);
    add("I-KIT03", 1, false, a1, "none", "w(A) <= (||A|| + sqrt(||A^2||))/2", eval_kit03);
    add("I-BP-ALPHA", 1, false, a1, "none",
        "w^2(A) <= min_{0<=alpha<=1} ||alpha |A|^2 + (1-alpha) |A*|^2||", eval_bp_alpha);
    add("I-BP-CHAIN", 1, false, a1, "none",
        "||A*A+AA*||/4 <= (||A+A*||^2 + ||A-A*||^2)/8 <= (||A+A*||^2 + ||A-A*||^2)/8 + "
        "c^2(A+A*)/8 + c^2(A-A*)/8 <= w^2(A)",
        eval_bp_chain);
    add("I-MAIN", 1, false, a1, "none", "w(A) <= (||A|| + sqrt(r(|A||A*|)))/2", eval_main);
    add("I-MAIN-DOM", 1, false, a1, "none", "r(|A||A*|) <= w(|A||A*|) <= ||A^2||",
        eval_main_dom);
    add("I-KSUM", 2, false, ab, "A, B positive semidefinite",
        "||A + B|| <= max(||A||, ||B||) + ||A^{1/2} B^{1/2}||", eval_ksum);
    add("I-GEN-FG", 2, false, ab, "|A|B = B*|A|; parameter s in [0,1]",
        "w(AB) <= r(B)/2 (max(||f(|A|)||^2, ||g(|A*|)||^2) + ||f(|A|) g(|A*|)||), "
        "f(t) = t^s, g(t) = t^(1-s)",
        eval_gen_fg);
    add("I-PROD", 2, false, ab, "|A|B = B*|A|",
        "w(AB) <= r(B)/2 (||A|| + sqrt r(|A||A*|)) <= (||B|| + sqrt r(|B||B*|))(||A|| + sqrt "
        "r(|A||A*|))/4",
        eval_prod);
    add("I-ALOMARI", 2, false, ab, "|A|B = B*|A|",
        "w(AB) <= (||B|| + sqrt ||B^2||)(||A|| + sqrt ||A^2||)/4", eval_alomari);
    add("I-BP-SELF", 1, false, a1, "none",
        "||AA* + A*A|| <= 4 [w^2(A) - (c^2(Re A) + c^2(Im A))/2]", eval_bp_self);
    add("I-AXB", 4, true, abxy, "none",
        "w(AXB +- BYA) <= 2 sqrt2 ||B|| max(||X||, ||Y||) sqrt(w^2(A) - (c^2(Re A) + "
        "c^2(Im A))/2)",
        eval_axb);
    add("I-FH", 2, true, ab, "none", "w(AB +- BA) <= 2 sqrt2 ||B|| w(A)", eval_fh);
    add("I-HK", 2, true, ab, "none",
        "w(AB +- BA) <= 2 sqrt2 ||B|| sqrt(w^2(A) - | ||Re A||^2 - ||Im A||^2 |/2)", eval_hk);
    add("I-COMM-A", 2, true, ab, "none",
        "w(AB +- BA) <= 2 sqrt2 ||B|| sqrt(w^2(A) - (c^2(Re A) + c^2(Im A))/2)", eval_comm_a);
    add("I-COMM-B", 2, true, ab, "none",
        "w(AB +- BA) <= 2 sqrt2 ||A|| sqrt(w^2(B) - (c^2(Re B) + c^2(Im B))/2)", eval_comm_b);
    add("I-OK", 4, true, abxy, "none", "w^2(AX +- BY) <= ||AA* + Y*Y|| ||X*X + BB*||", eval_ok);
    add("I-HD-BLOCK", 4, false, {"A", "X", "Y", "B"}, "none",
        "||[[A, X], [Y, B]]|| <= ||[[||A||, ||X||], [||Y||, ||B||]]||", eval_hd_block);
    add("I-MU", 2, false, ab, "none", "||AA* + B*B|| <= mu(A, B)", eval_mu);
    add("I-MU-MAX", 2, false, ab, "none", "mu(A, B) <= max(||A||^2, ||B||^2) + ||BA||",
        eval_mu_max);
    add("I-SELFMU", 1, false, a1, "none", "||AA* + A*A|| <= ||A||^2 + ||A^2||", eval_selfmu);
    add("I-MUXY", 4, true, abxy, "none", "w(AX +- BY) <= sqrt(mu(A, Y) mu(B, X))", eval_muxy);
    add("I-COMM-MU", 2, true, ab, "none",
        "w(AB +- BA) <= sqrt((||A||^2 + ||A^2||)(||B||^2 + ||B^2||))", eval_comm_mu);
    return r;
  }();
  return reg;
}

const Registered& lookup(std::string_view id) {
  for (const Registered& r : registry())
    if (r.entry.id == id) return r;
  throw UnknownInequality(std::string(id));
}

}  // namespace

const char* to_string(Sign s) {
  switch (s) {
    case Sign::plus: return "+";
    case Sign::minus: return "-";
    case Sign::none: return "n/a";
  }
  return "n/a";
}

std::optional<Sign> parse_sign(std::string_view s) {
  if (s == "+" || s == "plus") return Sign::plus;
  if (s == "-" || s == "minus") return Sign::minus;
  if (s == "n/a" || s == "none") return Sign::none;
  return std::nullopt;
}

bool within_bound(double lhs, double rhs, double tol) {
  return lhs <= rhs + tol * std::max(1.0, std::abs(rhs));
}

UnknownInequality::UnknownInequality(const std::string& id)
    : std::invalid_argument("unknown inequality id: " + id) {}

ArityMismatch::ArityMismatch(const std::string& id, std::size_t expected, std::size_t got)
    : std::invalid_argument(arity_message(id, expected, got)) {}

const std::vector<CatalogEntry>& catalog_list() {
  static const std::vector<CatalogEntry> list = [] {
    std::vector<CatalogEntry> out;
    for (const Registered& r : registry()) out.push_back(r.entry);
    return out;
  }();
  return list;
}

const CatalogEntry* find_entry(std::string_view id) {
  for (const CatalogEntry& e : catalog_list())
    if (e.id == id) return &e;
  return nullptr;
}

BoundReport evaluate(std::string_view id, std::span<const CMatrix> inputs, Sign sign,
                     const Settings& s, const EvalParams& p) {
  const Registered& reg = lookup(id);
  if (inputs.size() != reg.entry.arity)
    throw ArityMismatch(reg.entry.id, reg.entry.arity, inputs.size());
  for (std::size_t k = 1; k < inputs.size(); ++k)
    if (inputs[k].n() != inputs[0].n())
      throw DimensionMismatch(reg.entry.id, inputs[0].n(), inputs[k].n());
  if (reg.entry.signed_variants && sign == Sign::none)
    throw std::invalid_argument(reg.entry.id + ": sign (+ or -) required");
  if (!reg.entry.signed_variants && sign != Sign::none)
    throw std::invalid_argument(reg.entry.id + ": entry has no sign variants");

  ReportBuilder builder(reg.entry.id, sign, inputs, s.tol_cmp);
  const Ops ops{s};
  return reg.eval(builder, inputs, sign, ops, p);
}

std::vector<BoundReport> evaluate_variants(std::string_view id, std::span<const CMatrix> inputs,
                                           const Settings& s, const EvalParams& p) {
  const Registered& reg = lookup(id);
  if (!reg.entry.signed_variants) return {evaluate(id, inputs, Sign::none, s, p)};
  return {evaluate(id, inputs, Sign::plus, s, p), evaluate(id, inputs, Sign::minus, s, p)};
}

double mu(const CMatrix& a, const CMatrix& b) {
  if (a.n() != b.n()) throw DimensionMismatch("mu", a.n(), b.n());
  const double na2 = sq(op_norm(a));
  const double nb2 = sq(op_norm(b));
  const double nba = op_norm(b * a);
  return 0.5 * (na2 + nb2 + std::sqrt(sq(na2 - nb2) + 4.0 * sq(nba)));
}

double intertwining_residual(const CMatrix& a, const CMatrix& b) {
  if (a.n() != b.n()) throw DimensionMismatch("intertwining_residual", a.n(), b.n());
  const CMatrix abs_a = sqrt_psd(hermitian_part(adjoint(a) * a));
  return frobenius_norm(abs_a * b - adjoint(b) * abs_a);
}

// ---- implications ----------------------------------------------------------

const std::vector<ImplicationEntry>& implication_list() {
  static const std::vector<ImplicationEntry> list{
      {"IMP-ZERO-PRODUCT", 1, false, "r(|A||A*|) = 0  =>  w(A) = ||A||/2"},
      {"IMP-KIT03-EQUALITY", 1, false,
       "w(A) = (||A|| + sqrt ||A^2||)/2  =>  r(|A||A*|) = ||A^2||"},
      {"IMP-FONG-EQUALITY", 2, true,
       "B != 0 and w(AB +- BA) = 2 sqrt2 ||B|| w(A)  =>  c(Re A) = c(Im A) = 0"},
      {"IMP-MAIN-EQUALITY", 1, false,
       "w(A) = ||A|| or r(|A||A*|) = 0  =>  w(A) = (||A|| + sqrt r(|A||A*|))/2"},
  };
  return list;
}

ImplicationReport check_implication(std::string_view id, std::span<const CMatrix> inputs,
                                    Sign sign, const Settings& s) {
  const auto& list = implication_list();
  const auto it = std::find_if(list.begin(), list.end(),
                               [&](const ImplicationEntry& e) { return e.id == id; });
  if (it == list.end()) throw UnknownInequality(std::string(id));
  if (inputs.size() != it->arity) throw ArityMismatch(it->id, it->arity, inputs.size());
  if (it->signed_variants && sign == Sign::none)
    throw std::invalid_argument(it->id + ": sign (+ or -) required");
  if (!it->signed_variants && sign != Sign::none)
    throw std::invalid_argument(it->id + ": entry has no sign variants");

  const double tol = s.tol_implication;
  auto close = [tol](double x, double y) {
    return std::abs(x - y) <= tol * std::max(1.0, std::max(std::abs(x), std::abs(y)));
  };
  const Ops o{s};
  ImplicationReport rep;
  rep.id = it->id;
  rep.sign = sign;
  rep.inputs_digest = digest_hex(canonical_digest(inputs));
  const CMatrix& a = inputs[0];

  if (rep.id == "IMP-ZERO-PRODUCT") {
    const double r = Ops::r_abs_product(a);
    const double nrm = Ops::norm(a);
    const double w = o.w(a);
    rep.hypothesis_holds = r <= tol * std::max(1.0, nrm * nrm);
    rep.conclusion_holds = close(w, 0.5 * nrm);
    rep.details = {{"r_abs_product", r}, {"w", w}, {"norm", nrm}};
  } else if (rep.id == "IMP-KIT03-EQUALITY") {
    const double r = Ops::r_abs_product(a);
    const double nrm = Ops::norm(a);
    const double n2 = Ops::norm_sq(a);
    const double w = o.w(a);
    const double bound = 0.5 * (nrm + std::sqrt(n2));
    rep.hypothesis_holds = close(w, bound);
    rep.conclusion_holds = close(r, n2);
    rep.details = {{"w", w}, {"kit03_bound", bound}, {"r_abs_product", r}, {"norm_A2", n2}};
  } else if (rep.id == "IMP-FONG-EQUALITY") {
    const CMatrix& bm = inputs[1];
    const double nb = Ops::norm(bm);
    const double lhs = commutator_w(o, a, bm, sign);
    const double wa = o.w(a);
    const double bound = kTwoSqrt2 * nb * wa;
    const CartesianParts p = cartesian_parts(a);
    const double c_re = crawford_hermitian(p.re);
    const double c_im = crawford_hermitian(p.im);
    rep.hypothesis_holds = nb > 0.0 && close(lhs, bound);
    const double scale_c = std::max(1.0, wa);
    rep.conclusion_holds = c_re <= tol * scale_c && c_im <= tol * scale_c;
    rep.details = {{"w_commutator", lhs}, {"fong_bound", bound}, {"c_re", c_re}, {"c_im", c_im}};
  } else {
    const double r = Ops::r_abs_product(a);
    const double nrm = Ops::norm(a);
    const double w = o.w(a);
    const bool normaloid = close(w, nrm);
    const bool zero_product = r <= tol * std::max(1.0, nrm * nrm);
    const double bound = 0.5 * (nrm + std::sqrt(r));
    rep.hypothesis_holds = normaloid || zero_product;
    rep.conclusion_holds = close(w, bound);
    rep.details = {{"w", w},
                   {"norm", nrm},
                   {"r_abs_product", r},
                   {"main_bound", bound},
                   {"normaloid", normaloid ? 1.0 : 0.0},
                   {"zero_product", zero_product ? 1.0 : 0.0}};
  }
  return rep;
}

}  // namespace numrad

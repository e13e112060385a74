#ifndef INAM_LP_HPP_
#define INAM_LP_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "means.hpp"

namespace inam {

// Feasibility problem: x >= 0 and each row a·x <= b (or = b).
template <typename S>
struct LpProblem {
  struct Row {
    std::vector<std::pair<std::size_t, S>> coef;
    S rhs{0};
    bool equality = false;
  };
  std::size_t vars = 0;
  std::vector<Row> rows;

  void add(std::vector<std::pair<std::size_t, S>> coef, S rhs, bool equality = false) {
    rows.push_back({std::move(coef), std::move(rhs), equality});
  }
};

enum class LpStatus { feasible, infeasible, unknown };

inline const char* lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::feasible: return "Feasible";
    case LpStatus::infeasible: return "Infeasible";
    case LpStatus::unknown: return "Unknown";
  }
  return "Unknown";
}

template <typename S>
struct LpOutcome {
  LpStatus status = LpStatus::unknown;
  std::vector<S> x;
};

template <typename S>
class LpBackend {
 public:
  virtual ~LpBackend() = default;
  virtual LpOutcome<S> solve(const LpProblem<S>& problem) const = 0;
};

template <typename S>
struct LpTolerance {
  static S value() { return S(0); }
};
template <>
struct LpTolerance<double> {
  static double value() { return 1e-9; }
};

// Phase-one dense tableau simplex with Bland's rule.
template <typename S>
class BlandSimplex : public LpBackend<S> {
 public:
  explicit BlandSimplex(std::size_t max_pivots = 200000) : max_pivots_(max_pivots) {}

  LpOutcome<S> solve(const LpProblem<S>& pb) const override {
    const S tol = LpTolerance<S>::value();
    const std::size_t m = pb.rows.size(), n = pb.vars;
    // Column layout: originals, one slack per inequality row, artificials.
    std::size_t slacks = 0;
    for (const auto& r : pb.rows) slacks += !r.equality;
    std::vector<S> sign(m, S(1));
    std::vector<char> needs_art(m, 0);
    std::size_t arts = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (pb.rows[i].rhs < S(0)) sign[i] = S(-1);
      needs_art[i] = pb.rows[i].equality || pb.rows[i].rhs < S(0);
      arts += needs_art[i];
    }
    const std::size_t cols = n + slacks + arts, rhs = cols;
    std::vector<std::vector<S>> t(m, std::vector<S>(cols + 1, S(0)));
    std::vector<std::size_t> basis(m);
    std::size_t next_slack = n, next_art = n + slacks;
    for (std::size_t i = 0; i < m; ++i) {
      for (const auto& [j, a] : pb.rows[i].coef) t[i][j] += sign[i] * a;
      t[i][rhs] = sign[i] * pb.rows[i].rhs;
      if (!pb.rows[i].equality) {
        t[i][next_slack] = sign[i];
        if (!needs_art[i]) basis[i] = next_slack;
        ++next_slack;
      }
      if (needs_art[i]) {
        t[i][next_art] = S(1);
        basis[i] = next_art++;
      }
    }
    std::vector<S> d(cols + 1, S(0));
    for (std::size_t i = 0; i < m; ++i)
      if (needs_art[i])
        for (std::size_t j = 0; j <= cols; ++j)
          if (j < n + slacks || j == rhs) d[j] -= t[i][j];

    LpOutcome<S> out;
    for (std::size_t pivots = 0;; ++pivots) {
      if (pivots > max_pivots_) return out;
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols; ++j)
        if (d[j] < -tol) {
          enter = j;
          break;
        }
      if (enter == cols) break;
      std::size_t leave = m;
      for (std::size_t i = 0; i < m; ++i) {
        if (!(t[i][enter] > tol)) continue;
        if (leave == m) {
          leave = i;
          continue;
        }
        const S lhs = t[i][rhs] * t[leave][enter], cur = t[leave][rhs] * t[i][enter];
        if (lhs < cur - tol || (!(cur < lhs - tol) && basis[i] < basis[leave])) leave = i;
      }
      if (leave == m) return out;  // unbounded phase one cannot happen; treat as failure
      pivot(t, d, leave, enter);
      basis[leave] = enter;
    }
    // d[rhs] holds minus the artificial total.
    if (-d[rhs] > tol) {
      out.status = LpStatus::infeasible;
      return out;
    }
    out.status = LpStatus::feasible;
    out.x.assign(n, S(0));
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] < n) out.x[basis[i]] = t[i][rhs];
    return out;
  }

 private:
  static void pivot(std::vector<std::vector<S>>& t, std::vector<S>& d, std::size_t r, std::size_t c) {
    const S p = t[r][c];
    for (auto& v : t[r]) v /= p;
    auto eliminate = [&](std::vector<S>& row) {
      const S f = row[c];
      if (f == S(0)) return;
      for (std::size_t j = 0; j < row.size(); ++j)
        if (t[r][j] != S(0)) row[j] -= f * t[r][j];
    };
    for (std::size_t i = 0; i < t.size(); ++i)
      if (i != r) eliminate(t[i]);
    eliminate(d);
  }

  std::size_t max_pivots_;
};

// Rows of the problem with each equality split into two inequalities.
template <typename S>
std::vector<typename LpProblem<S>::Row> inequality_rows(const LpProblem<S>& pb) {
  std::vector<typename LpProblem<S>::Row> rows;
  for (const auto& r : pb.rows) {
    rows.push_back({r.coef, r.rhs, false});
    if (r.equality) {
      auto neg = r;
      for (auto& [j, a] : neg.coef) a = -a;
      neg.rhs = -neg.rhs;
      neg.equality = false;
      rows.push_back(neg);
    }
  }
  return rows;
}

// Farkas alternative: y >= 0, Aᵀy >= 0, bᵀy = -1 over the inequality rows.
template <typename S>
std::optional<std::vector<S>> farkas_certificate(const LpProblem<S>& pb, const LpBackend<S>& backend) {
  auto rows = inequality_rows(pb);
  LpProblem<S> alt;
  alt.vars = rows.size();
  std::vector<std::vector<std::pair<std::size_t, S>>> cols(pb.vars);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [j, a] : rows[r].coef) cols[j].emplace_back(r, -a);
  for (auto& c : cols) alt.add(std::move(c), S(0));
  std::vector<std::pair<std::size_t, S>> obj;
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r].rhs != S(0)) obj.emplace_back(r, rows[r].rhs);
  alt.add(obj, S(-1), true);
  auto res = backend.solve(alt);
  if (res.status != LpStatus::feasible) return std::nullopt;
  return res.x;
}

// Independent check of a Farkas certificate.
template <typename S>
bool verify_farkas(const LpProblem<S>& pb, const std::vector<S>& y) {
  const S tol = LpTolerance<S>::value();
  auto rows = inequality_rows(pb);
  if (y.size() != rows.size()) return false;
  std::vector<S> aty(pb.vars, S(0));
  S by(0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (y[r] < -tol) return false;
    for (const auto& [j, a] : rows[r].coef) aty[j] += a * y[r];
    by += rows[r].rhs * y[r];
  }
  for (const auto& v : aty)
    if (v < -tol) return false;
  return by < -tol;
}

template <typename S>
struct MeanSearchResult {
  LpStatus status = LpStatus::unknown;
  std::optional<ProbVec<S>> p;
  std::vector<S> certificate;
  bool verified = false;  // feasible point or certificate re-checked independently
  std::size_t variables = 0;
  std::size_t constraints = 0;
  std::string scope = "carrier-relative";
};

// Searches for p on the carrier with p >= 0, Σp = 1, p = 0 on `forbidden`
// (and off `concentrate`), atoms <= δ and ‖α(k)p − p‖₁ <= ε for k in F,
// where conjugates leaving the carrier count in full.
template <typename S>
MeanSearchResult<S> lp_mean_search(const GroupCtx& ctx, const std::vector<Elt>& carrier, const std::vector<Elt>& f,
                                   const S& eps, const S& delta, const std::vector<Elt>& forbidden = {},
                                   const Subgroup* concentrate = nullptr,
                                   const LpBackend<S>& backend = BlandSimplex<S>{}) {
  if (!(S(0) <= eps) || !(S(0) < delta) || S(1) < delta)
    throw Error(ErrorCode::schema, "need eps >= 0 and delta in (0, 1]");
  std::set<Elt> forb(forbidden.begin(), forbidden.end());
  std::vector<Elt> allowed;
  std::map<Elt, std::size_t> var;
  for (const auto& x : std::set<Elt>(carrier.begin(), carrier.end())) {
    if (forb.count(x) || (concentrate && !concentrate->contains(x))) continue;
    var[x] = allowed.size();
    allowed.push_back(x);
  }
  MeanSearchResult<S> res;
  LpProblem<S> pb;
  pb.vars = allowed.size();
  std::vector<std::pair<std::size_t, S>> sum;
  for (std::size_t i = 0; i < allowed.size(); ++i) {
    sum.emplace_back(i, S(1));
    if (delta < S(1)) pb.add({{i, S(1)}}, delta);
  }
  pb.add(sum, S(1), true);
  for (const auto& k : f) {
    const auto ki = ctx->inverse(k);
    std::vector<std::pair<std::size_t, S>> defect;
    std::map<std::size_t, S> leak;
    for (std::size_t i = 0; i < allowed.size(); ++i) {
      const auto& z = allowed[i];
      auto pre = ctx->multiply(ctx->multiply(ki, z), k);  // α(k)p(z) = p(k^-1 z k)
      auto src = var.find(pre);
      if (src == var.end()) {
        leak[i] += S(1);
      } else if (src->second != i) {
        const std::size_t tv = pb.vars++;
        pb.add({{src->second, S(1)}, {i, S(-1)}, {tv, S(-1)}}, S(0));
        pb.add({{src->second, S(-1)}, {i, S(1)}, {tv, S(-1)}}, S(0));
        defect.emplace_back(tv, S(1));
      }
      auto img = ctx->conjugate(k, z);
      if (!var.count(img)) leak[i] += S(1);
    }
    for (const auto& [i, c] : leak) defect.emplace_back(i, c);
    if (!defect.empty()) pb.add(defect, eps);
  }
  res.variables = pb.vars;
  res.constraints = pb.rows.size();
  auto out = backend.solve(pb);
  res.status = out.status;
  if (out.status == LpStatus::feasible) {
    ProbVec<S> p{ctx, {}};
    for (std::size_t i = 0; i < allowed.size(); ++i) p.add(allowed[i], out.x[i]);
    const S tol = LpTolerance<S>::value();
    bool ok = ArithTraits<S>::abs(p.total() - S(1)) <= tol * S(100);
    for (const auto& [x, v] : p.mass) ok = ok && !(v < -tol) && !(delta + tol < v);
    for (const auto& d : conjugation_defect(p, f).per_generator) ok = ok && !(eps + tol * S(100) < d);
    res.verified = ok;
    res.p = std::move(p);
  } else if (out.status == LpStatus::infeasible) {
    if (auto y = farkas_certificate(pb, backend)) {
      res.certificate = *y;
      res.verified = verify_farkas(pb, *y);
    }
    if (!res.verified) res.status = LpStatus::unknown;
  }
  return res;
}

}  // namespace inam

#endif  // INAM_LP_HPP_

#include "ymbv/bv.hpp"

#include "ymbv/linsolve.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <stdexcept>

namespace ymbv {

std::vector<std::vector<int>> theta_words(int n, int target) {
  const auto& deg = YMBasis::deg();
  const auto& rdeg = YMBasis::rdeg();
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // enumerate non-decreasing tuples, pruning only at the leaves to keep the
  // predicate identical to the specification
  std::function<void(int)> rec = [&](int lo) {
    if ((int)cur.size() == n) {
      int sd = 0, sr = 0;
      for (int i : cur) {
        sd += deg[i];
        sr += rdeg[i];
      }
      if (sd + 2 != deg[target] || sr != rdeg[target]) return;
      // duplicate-free on odd-degree letters
      for (size_t i = 1; i < cur.size(); ++i)
        if (cur[i] == cur[i - 1] && (deg[cur[i]] & 1)) return;
      out.push_back(cur);
      return;
    }
    for (int i = lo; i < 16; ++i) {
      cur.push_back(i);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

OperatorSpec add_ops(const std::vector<OperatorSpec>& ops) {
  if (ops.empty()) throw std::logic_error("add_ops: empty list");
  for (auto& o : ops)
    if (o.deg != ops[0].deg)
      throw std::logic_error("add_ops: mixed operator degrees");
  auto copy = std::make_shared<std::vector<OperatorSpec>>(ops);
  return derivation(ops[0].deg, ops[0].ndeg, [copy](GContext& ctx, int idx) {
    GElement r;
    for (auto& o : *copy) r += eval_op(ctx, o, ctx.gen(idx));
    return r;
  });
}

BVSystem::BVSystem(const StructureTables& t, int kcap) : t_(t), ctx_(kcap) {
  if (!t_.has_h)
    throw std::invalid_argument("BVSystem requires a solved homotopy h");
  alpha_ = alpha_op();
  beta_ = beta_op();
  K_ = K_op();
  d_ = d_op(t_);
  h_ = h_op(t_);
}

bool BVSystem::is_solved(int n) const {
  if (n == 2) return true;
  auto it = solved_.find(n);
  return it != solved_.end() && it->second;
}

OperatorSpec BVSystem::theta_operator(int n) const {
  if (n == 2) return theta2_op(t_);
  auto entry = std::make_shared<ThetaEntry>(entries_.at(n));
  return derivation(2, n - 1, [entry](GContext& ctx, int idx) {
    GElement r;
    for (auto& [word, coeff] : entry->rows[idx]) {
      GElement w = GElement::scalar(QI(1));
      for (int letter : word) w = ctx.mul(w, ctx.gen(letter));
      r += gscale(w, coeff);
    }
    return r;
  });
}

OperatorSpec BVSystem::theta(int n) {
  auto it = theta_cache_.find(n);
  if (it != theta_cache_.end()) return it->second;
  OperatorSpec op = theta_operator(n);
  theta_cache_.emplace(n, op);
  return op;
}

OperatorSpec BVSystem::nu(int k) {
  auto it = nu_cache_.find(k);
  if (it != nu_cache_.end()) return it->second;
  OperatorSpec op = commutator(alpha_, theta(k));
  nu_cache_.emplace(k, op);
  return op;
}

OperatorSpec BVSystem::mu(int k) {
  auto it = mu_cache_.find(k);
  if (it != mu_cache_.end()) return it->second;
  OperatorSpec op = scale_op(big_gamma(commutator(h_, nu(k))), QI(-1));
  mu_cache_.emplace(k, op);
  return op;
}

OperatorSpec BVSystem::q_op(int k) {
  std::vector<OperatorSpec> parts;
  for (int n = 2; n <= k - 1; ++n) parts.push_back(commutator(mu(k + 1 - n), nu(n)));
  if (parts.empty()) return derivation(3, k - 1, nullptr);
  return big_gamma(add_ops(parts));
}

OperatorSpec BVSystem::b_op(int k) {
  return add_ops({scale_op(commutator(d_, theta(k)), QI(-1)), q_op(k)});
}

OperatorSpec BVSystem::c_op(int k) {
  std::vector<OperatorSpec> parts;
  for (int n = 2; n <= k - 1; ++n) parts.push_back(commutator(nu(k + 1 - n), nu(n)));
  if (parts.empty()) return derivation(3, k - 1, nullptr);
  return scale_op(big_gamma(add_ops(parts)), QI::frac(1, 2));
}

void BVSystem::build_ansatz(int n) {
  if (n < 3) throw std::invalid_argument("ansatz arity must be >= 3");
  ThetaEntry e;
  for (int i = 0; i < 16; ++i)
    for (auto& w : theta_words(n, i))
      e.rows[i].emplace_back(w, Poly::sym(symtab::fresh("th" + std::to_string(n) + "_")));
  entries_[n] = std::move(e);
  solved_[n] = false;
  invalidate(n);
}

void BVSystem::invalidate(int n) {
  theta_cache_.erase(n);
  nu_cache_.erase(n);
  mu_cache_.erase(n);
}

BVSystem::SolveInfo BVSystem::solve_theta(int n) {
  if (!entries_.count(n)) build_ansatz(n);
  // collect the parameters of this arity
  std::set<Sym> pset;
  for (int i = 0; i < 16; ++i)
    for (auto& [w, c] : entries_[n].rows[i])
      for (auto& [m, q] : c.t)
        for (auto& [s, e] : m.e) pset.insert(s);
  std::vector<Sym> params(pset.begin(), pset.end());

  OperatorSpec b = b_op(n);
  std::vector<Poly> eqs;
  for (int i = 0; i < 16; ++i) {
    GElement r = eval_op(ctx_, b, ctx_.gen(i));
    for (auto& [w, c] : r.t) eqs.push_back(c);
  }
  SolveInfo info;
  info.params = params.size();
  info.equations = eqs.size();
  AffineSolution sol = solve_affine(eqs, params);
  info.consistent = sol.consistent;
  info.free_params = sol.free_syms.size();
  if (!sol.consistent) return info;
  std::map<Sym, Poly> bind;
  for (auto& [s, p] : sol.assign) bind[s] = p;
  for (int i = 0; i < 16; ++i)
    for (auto& [w, c] : entries_[n].rows[i]) c = c.substitute_poly(bind);
  solved_[n] = sol.free_syms.empty();
  invalidate(n);
  return info;
}

void BVSystem::perturb(int n, int target, size_t word_index, const QI& delta) {
  auto& row = entries_.at(n).rows[target];
  row.at(word_index).second += Poly::con(delta);
  invalidate(n);
}

bool BVSystem::op_zero_on_gens(const OperatorSpec& op, int& witness) {
  witness = -1;
  for (int i = 0; i < 16; ++i)
    if (!eval_op(ctx_, op, ctx_.gen(i)).is_zero()) {
      witness = i;
      return false;
    }
  return true;
}

AxiomReport BVSystem::verify_all(int nmax) {
  AxiomReport rep;
  auto check = [&](const std::string& name, const OperatorSpec& op) {
    AxiomVerdict v;
    v.name = name;
    v.pass = op_zero_on_gens(op, v.witness);
    rep.items.push_back(v);
  };
  // arity 1, degrees 2 / 0 / -2
  check("A(1,2)", scale_op(commutator(d_, d_), QI::frac(1, 2)));
  check("A(1,0)", add_ops({scale_op(K_, QI(-1)), commutator(d_, h_)}));
  check("A(1,-2)", scale_op(commutator(h_, h_), QI::frac(1, 2)));
  for (int k = 2; k <= nmax; ++k) {
    std::vector<OperatorSpec> a2 = {commutator(beta_, nu(k)), commutator(d_, mu(k))};
    for (int n = 2; n <= k - 1; ++n)
      a2.push_back(scale_op(commutator(mu(k + 1 - n), mu(n)), QI::frac(1, 2)));
    check("A(" + std::to_string(k) + ",2)", add_ops(a2));
    check("A(" + std::to_string(k) + ",0)", commutator(h_, mu(k)));
    std::vector<OperatorSpec> b2 = {commutator(d_, nu(k))};
    for (int n = 2; n <= k - 1; ++n) b2.push_back(commutator(mu(k + 1 - n), nu(n)));
    check("B(" + std::to_string(k) + ",2)", add_ops(b2));
    check("B(" + std::to_string(k) + ",0)",
          add_ops({commutator(alpha_, mu(k)), commutator(h_, nu(k))}));
    if (k >= 3) {
      std::vector<OperatorSpec> c2;
      for (int n = 2; n <= k - 1; ++n)
        c2.push_back(scale_op(commutator(nu(k + 1 - n), nu(n)), QI::frac(1, 2)));
      check("C(" + std::to_string(k) + ",2)", add_ops(c2));
      check("C(" + std::to_string(k) + ",0)", commutator(alpha_, nu(k)));
    }
  }
  // reduced forms: b_k and c_k from the Gamma-contraction
  for (int k = 2; k <= nmax; ++k) check("b(" + std::to_string(k) + ")", b_op(k));
  for (int k = 3; k <= nmax; ++k) check("c(" + std::to_string(k) + ")", c_op(k));
  return rep;
}

void BVSystem::save_certificate(const std::string& path, int nmax,
                                const AxiomReport& report) const {
  nlohmann::json j;
  j["format"] = "theta-certificate-v1";
  j["nmax"] = nmax;
  j["h_checksum"] = hmat_checksum(t_.hmat);
  nlohmann::json thetas = nlohmann::json::object();
  for (auto& [n, e] : entries_) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 16; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (auto& [w, c] : e.rows[i]) {
        if (c.is_zero()) continue;
        if (!c.is_const())
          throw std::logic_error("certificate requires solved coefficients");
        nlohmann::json item;
        item["target"] = YMBasis::names()[i];
        nlohmann::json word = nlohmann::json::array();
        for (int l : w) word.push_back(YMBasis::names()[l]);
        item["word"] = word;
        item["re"] = c.const_value().re_str();
        item["im"] = c.const_value().im_str();
        row.push_back(item);
      }
      rows.push_back(row);
    }
    thetas[std::to_string(n)] = rows;
  }
  j["theta"] = thetas;
  nlohmann::json verdicts = nlohmann::json::array();
  for (auto& v : report.items) {
    nlohmann::json it;
    it["name"] = v.name;
    it["pass"] = v.pass;
    if (!v.pass) it["witness"] = v.witness;
    verdicts.push_back(it);
  }
  j["verdicts"] = verdicts;
  j["all_pass"] = report.all_pass();
  j["tool"] = "ymbv-1.0";
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

}  // namespace ymbv

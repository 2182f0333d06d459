// Command-line front end: parse, normalize, enumerate, dimension tables and
// verification suites with machine-readable output.

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "webcat/hecke.hpp"
#include "webcat/json_io.hpp"
#include "webcat/parser.hpp"
#include "webcat/rules.hpp"

using namespace webcat;

namespace {

comb::Composition parse_composition(const std::string& s) {
  std::vector<int> parts;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',') {
      if (!cur.empty()) parts.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  return comb::Composition(parts);
}

std::vector<Rat> parse_rationals(const std::string& s) {
  std::vector<Rat> out;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',') {
      if (!cur.empty()) {
        Rat q(cur);
        q.canonicalize();
        out.push_back(q);
      }
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  return out;
}

int worker_count() {
  const char* env = std::getenv("WEBCAT_THREADS");
  if (env) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

std::vector<comb::Composition> compositions_of(int w) {
  std::vector<comb::Composition> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int rem) {
    if (rem == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = 1; p <= rem; ++p) {
      cur.push_back(p);
      rec(rem - p);
      cur.pop_back();
    }
  };
  rec(w);
  return out;
}

int run_relations_suite(int max_size, uint64_t seed) {
  const auto& rules = rules::catalog();
  const int nthreads = worker_count();
  std::vector<rules::CheckReport> reports(rules.size());
  std::atomic<size_t> next{0};
  auto work = [&]() {
    while (true) {
      size_t k = next.fetch_add(1);
      if (k >= rules.size()) break;
      const auto& rule = rules[k];
      const int bound = (rule.id == "R1" || rule.id == "R2" || rule.id == "R3")
                            ? max_size + 1
                            : max_size;
      const int maxw = 3 * bound;
      const int rows = (maxw + 1) / 2;
      rep::RepParams params =
          rep::RepParams::rectangle(rows, 2, rep::RepParams::default_twist(2));
      reports[k] = rules::check_rule(rule, bound, params, Ring::Q, seed);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  bool ok = true;
  for (const auto& rep : reports) {
    std::cout << rep.rule_id << ": " << rep.checked << " instances "
              << (rep.ok() ? "pass" : "FAIL") << "\n";
    for (const auto& f : rep.failures) {
      std::cout << "  mismatch at " << f << "\n";
      ok = false;
    }
  }
  return ok ? 0 : 3;
}

int run_basis_suite(int max_size) {
  bool ok = true;
  const int maxdeg = 3;
  for (int w = 1; w <= max_size; ++w)
    for (const auto& mu : compositions_of(w))
      for (const auto& lam : compositions_of(w))
        for (const auto& e : nf::enumerate_parmat(mu, lam, std::nullopt, maxdeg)) {
          nf::NormalForm got = nf::normalize(
              diag::Morphism::single(nf::cfd_to_diagram(e)), Ring::Z);
          nf::NormalForm want(mu, lam);
          want.add(e, 1);
          if (!(got == want)) {
            std::cout << "FAIL fixed point " << e.to_string() << " -> "
                      << got.to_string() << "\n";
            ok = false;
          }
        }
  std::cout << "basis fixed points " << (ok ? "pass" : "FAIL") << "\n";
  return ok ? 0 : 3;
}

int run_hecke_suite(int max_size) {
  bool ok = true;
  auto nrm = [](const diag::Morphism& m) { return nf::normalize(m, Ring::Z); };
  for (int m = 2; m <= max_size; ++m) {
    for (int i = 1; i < m; ++i) {
      auto s = hecke::s_generator(m, i);
      ok &= nrm(diag::compose(s, s)) ==
            nrm(diag::m_id(comb::Composition(std::vector<int>(m, 1))));
      for (int j = 1; j <= m; ++j) {
        auto x = hecke::x_generator(m, j);
        if (j != i && j != i + 1)
          ok &= nrm(diag::compose(s, x)) == nrm(diag::compose(x, s));
      }
      auto xi = hecke::x_generator(m, i);
      auto xi1 = hecke::x_generator(m, i + 1);
      ok &= nrm(diag::compose(xi1, s)) ==
            (nrm(diag::compose(s, xi)) - nrm(diag::m_id(comb::Composition(
                 std::vector<int>(m, 1)))));
    }
    for (int i = 1; i + 1 < m; ++i) {
      auto s1 = hecke::s_generator(m, i);
      auto s2 = hecke::s_generator(m, i + 1);
      ok &= nrm(diag::compose(s1, diag::compose(s2, s1))) ==
            nrm(diag::compose(s2, diag::compose(s1, s2)));
    }
    for (int j = 1; j < m; ++j)
      ok &= nrm(diag::compose(hecke::x_generator(m, j),
                              hecke::x_generator(m, j + 1))) ==
            nrm(diag::compose(hecke::x_generator(m, j + 1),
                              hecke::x_generator(m, j)));
  }
  std::cout << "affine word relations " << (ok ? "pass" : "FAIL") << "\n";
  return ok ? 0 : 3;
}

int run_wschur_suite(int max_size) {
  bool ok = true;
  const int maxw = std::min(3, max_size);
  for (int ell = 1; ell <= 2; ++ell) {
    std::vector<Rat> u;
    for (int i = 1; i <= ell; ++i) u.emplace_back(7 * i);
    nf::LevelParams L(ell, u);
    for (int w = 1; w <= maxw; ++w)
      for (const auto& lam : compositions_of(w))
        for (const auto& mu : compositions_of(w)) {
          auto rep = hecke::wschur_dim_check(lam, mu, L, w);
          if (!rep.ok()) {
            std::cout << "FAIL wschur " << lam.to_string() << " "
                      << mu.to_string() << " ell=" << ell << ": "
                      << rep.web_side << " vs " << rep.schur_side << "\n";
            ok = false;
          }
        }
  }
  std::cout << "wschur dimensions " << (ok ? "pass" : "FAIL") << "\n";
  return ok ? 0 : 3;
}

int run_char0_suite(int max_size) {
  bool ok = true;
  const int bound = std::min(3, max_size);
  // Averaged-balloon reading of the full decoration, then the crossing and
  // split/merge identities for it, all normalized over the rationals.
  auto thin_balloon_dot = [&](int a) {
    diag::Morphism mid = diag::m_id(comb::Composition());
    for (int k = 0; k < a; ++k) mid = diag::tensor(mid, diag::m_dot(1));
    diag::Morphism split = diag::m_id(a);
    for (int k = 1; k < a; ++k)
      split = diag::compose(
          diag::tensor(diag::m_id(comb::Composition(std::vector<int>(k - 1, 1))),
                       diag::m_split(1, a - k)),
          split);
    diag::Morphism merge = diag::reflect(split);
    return diag::compose(merge, diag::compose(mid, split))
        .scaled(Rat(1) / Rat(comb::factorial(a)));
  };
  auto nrmq = [](const diag::Morphism& m) { return nf::normalize(m, Ring::Q); };
  for (int a = 1; a <= bound; ++a) {
    ok &= nrmq(thin_balloon_dot(a)) == nrmq(diag::m_dot(a));
    if (!ok) std::cout << "FAIL averaged balloon a=" << a << "\n";
  }
  for (const auto& rule : rules::catalog()) {
    if (rule.id != "R4" && rule.id != "R5") continue;
    for (const auto& inst : rule.instances(bound)) {
      if (!(nrmq(inst.lhs) == nrmq(inst.rhs))) {
        std::cout << "FAIL char0 " << inst.label << "\n";
        ok = false;
      }
    }
  }
  // r! prod_j g_{r,u_j} equals the balloon with the thin product on each leg.
  for (int ell = 1; ell <= 2; ++ell) {
    std::vector<Rat> u;
    for (int i = 1; i <= ell; ++i) u.emplace_back(Rat(2 * i - 3));
    for (int r = 1; r <= std::min(3, max_size); ++r) {
      diag::Morphism f = diag::m_id(1);
      for (const Rat& uv : u) f = diag::compose(nf::g_element(1, uv), f);
      diag::Morphism mid = diag::m_id(comb::Composition());
      for (int k = 0; k < r; ++k) mid = diag::tensor(mid, f);
      diag::Morphism split = diag::m_id(r);
      for (int k = 1; k < r; ++k)
        split = diag::compose(
            diag::tensor(
                diag::m_id(comb::Composition(std::vector<int>(k - 1, 1))),
                diag::m_split(1, r - k)),
            split);
      diag::Morphism balloon =
          diag::compose(diag::reflect(split), diag::compose(mid, split));
      diag::Morphism prod = diag::m_id(r);
      for (const Rat& uv : u)
        prod = diag::compose(nf::g_element(r, uv), prod);
      if (!(nrmq(balloon) == nrmq(prod.scaled(Rat(comb::factorial(r)))))) {
        std::cout << "FAIL level balloon r=" << r << " ell=" << ell << "\n";
        ok = false;
      }
    }
  }
  std::cout << "char0 identities " << (ok ? "pass" : "FAIL") << "\n";
  return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact engine for dotted web diagrams and their level quotients"};
  app.require_subcommand(1);

  std::string expr, lhs, rhs, source, target, ustr, suite, ring_str = "Z";
  int level = 0, max_degree = -1, max_size = 3;
  uint64_t seed = 2024;

  auto* cmd_norm = app.add_subcommand("normalize", "rewrite onto the basis");
  cmd_norm->add_option("--expr", expr)->required();
  cmd_norm->add_option("--ring", ring_str);
  cmd_norm->add_option("--level", level);
  cmd_norm->add_option("--u", ustr);

  auto* cmd_basis = app.add_subcommand("basis", "list basis elements");
  cmd_basis->add_option("--source", source)->required();
  cmd_basis->add_option("--target", target)->required();
  cmd_basis->add_option("--level", level);
  cmd_basis->add_option("--max-degree", max_degree);

  auto* cmd_dim = app.add_subcommand("dim", "graded dimension table");
  cmd_dim->add_option("--source", source)->required();
  cmd_dim->add_option("--target", target)->required();
  cmd_dim->add_option("--level", level);
  cmd_dim->add_option("--max-degree", max_degree);

  auto* cmd_comp = app.add_subcommand("compose", "normalized product");
  cmd_comp->add_option("--lhs", lhs)->required();
  cmd_comp->add_option("--rhs", rhs)->required();
  cmd_comp->add_option("--ring", ring_str);

  auto* cmd_oracle = app.add_subcommand("oracle-compare",
                                        "normalize two ways and compare");
  cmd_oracle->add_option("--expr", expr)->required();
  cmd_oracle->add_option("--seed", seed);

  auto* cmd_check = app.add_subcommand("check", "run a verification suite");
  cmd_check->add_option("--suite", suite)->required();
  cmd_check->add_option("--max-size", max_size);
  cmd_check->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_norm->parsed()) {
      Ring ring = ring_str == "Q" ? Ring::Q : Ring::Z;
      auto m = diag::parse(expr);
      nf::NormalForm f;
      if (level > 0) {
        auto u = parse_rationals(ustr);
        f = nf::cyclotomic_normalize(m, nf::LevelParams(level, u), ring);
      } else {
        f = nf::normalize(m, ring);
      }
      std::cout << nf::to_json(f).dump(2) << "\n";
      return 0;
    }
    if (cmd_basis->parsed() || cmd_dim->parsed()) {
      auto mu = parse_composition(source);
      auto lam = parse_composition(target);
      std::optional<int> lvl, maxd;
      if (level > 0) lvl = level;
      if (max_degree >= 0) maxd = max_degree;
      if (cmd_basis->parsed()) {
        for (const auto& e : nf::enumerate_parmat(mu, lam, lvl, maxd))
          std::cout << nf::cfd_json(e).dump() << "\n";
        return 0;
      }
      int bound = maxd ? *maxd : (level > 0 ? mu.weight() * (level - 1) : 0);
      auto counts = nf::graded_dimension(mu, lam, bound, lvl);
      nlohmann::ordered_json j;
      j["source"] = mu.parts();
      j["target"] = lam.parts();
      j["by_degree"] = counts;
      long total = 0;
      for (long c : counts) total += c;
      j["total"] = total;
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (cmd_comp->parsed()) {
      Ring ring = ring_str == "Q" ? Ring::Q : Ring::Z;
      auto f = nf::normalize(diag::parse(lhs), ring);
      auto g = nf::normalize(diag::parse(rhs), ring);
      std::cout << nf::to_json(nf::multiply_normal(f, g, ring)).dump(2) << "\n";
      return 0;
    }
    if (cmd_oracle->parsed()) {
      auto m = diag::parse(expr);
      auto direct = nf::normalize(m, Ring::Q);
      auto via_matrices = rep::oracle_normalize(m, std::nullopt, seed);
      nlohmann::ordered_json j;
      j["rewriting"] = nf::to_json(direct);
      j["matrices"] = nf::to_json(via_matrices);
      const bool same = direct == via_matrices;
      j["agree"] = same;
      std::cout << j.dump(2) << "\n";
      return same ? 0 : 4;
    }
    if (cmd_check->parsed()) {
      if (suite == "relations") return run_relations_suite(max_size, seed);
      if (suite == "basis") return run_basis_suite(max_size);
      if (suite == "hecke") return run_hecke_suite(max_size);
      if (suite == "wschur") return run_wschur_suite(max_size);
      if (suite == "char0") return run_char0_suite(max_size);
      std::cerr << "unknown suite: " << suite << "\n";
      return 1;
    }
  } catch (const diag::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const composition_error& e) {
    std::cerr << "boundary error: " << e.what() << "\n";
    return 2;
  } catch (const invalid_input& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const ring_error& e) {
    std::cerr << "ring error: " << e.what() << "\n";
    return 1;
  } catch (const internal_error& e) {
    std::cerr << "internal consistency error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}

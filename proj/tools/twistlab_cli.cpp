#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "twistlab/checks.hpp"
#include "twistlab/io.hpp"

using namespace twistlab;

namespace {

signature signature_for(int n, const std::string& sig_str_opt, bool alternating) {
  if (!sig_str_opt.empty()) return parse_signature(sig_str_opt);
  if (alternating) return alternating_signature(n, false);
  return minus_signature(n);
}

int run_count(const std::string& family, int k, int n, const std::string& sig_opt,
              bool alternating, long long budget_limit) {
  budget bud(budget_limit);
  long long result = 0;
  if (family == "twists") {
    result = (long long)enumerate_twists(k, n, false, bud).size();
  } else if (family == "acyclic") {
    result = (long long)enumerate_twists(k, n, true, bud).size();
  } else if (family == "orientations") {
    result = (long long)enumerate_acyclic_orientations(k, n).size();
  } else if (family == "indecomposable") {
    result = count_indecomposables(k, n);
  } else if (family == "twins") {
    result = twin_pairs(k, n, alternating);
  } else if (family == "cambrian") {
    signature sig = signature_for(n, sig_opt, alternating);
    result = (long long)cambrian_fibers_image(k, sig).size();
  } else if (family == "hypertwists") {
    result = (long long)enumerate_hypertwists(k, n, true, bud).size();
  } else if (family == "classes") {
    result = (long long)congruence_classes(k, n).size();
  } else {
    raise(errc::parse_error, "unknown counting family: " + family);
  }
  std::printf("%lld\n", result);
  return 0;
}

int run_insert(int k, const std::string& word, const std::string& partition,
               const std::string& sig_opt) {
  if (!partition.empty()) {
    hyper_twist h = insert_ordered_partition(k, parse_partition(partition));
    json j = to_json(h);
    json fib = json::array();
    for (const auto& lam : hyper_fiber(h)) fib.push_back(lam.str());
    j["fiber"] = std::move(fib);
    std::printf("%s\n", j.dump().c_str());
    return 0;
  }
  twist t;
  if (!sig_opt.empty()) {
    signature sig = parse_signature(sig_opt);
    t = cambrian_insert(k, signed_perm(parse_perm(word), {sig}));
  } else {
    t = insert_permutation(k, parse_perm(word));
  }
  json j = to_json(t);
  json fib = json::array();
  for (const auto& p : fiber(t)) fib.push_back(p.str());
  j["fiber"] = std::move(fib);
  std::printf("%s\n", j.dump().c_str());
  return 0;
}

int run_lattice(const std::string& family, int k, int n, const std::string& sig_opt, bool dot,
                long long budget_limit) {
  budget bud(budget_limit);
  if (family == "twists") {
    twist_lattice L = sig_opt.empty() ? increasing_flip_lattice(k, n, bud)
                                      : cambrian_flip_lattice(k, parse_signature(sig_opt), bud);
    auto key = [](const twist& t) { return key_of(t); };
    if (dot) std::printf("%s", lattice_to_dot(L.elems, L.order, key).c_str());
    else std::printf("%s\n", lattice_to_json(L.elems, L.order, key).dump().c_str());
  } else if (family == "orientations") {
    auto elems = enumerate_acyclic_orientations(k, n);
    std::map<orientation, int> idx;
    for (int i = 0; i < (int)elems.size(); ++i) idx[elems[i]] = i;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < (int)elems.size(); ++i)
      for (const auto& o : orientation_increasing_flips(elems[i])) edges.emplace_back(i, idx.at(o));
    finite_lattice F = finite_lattice::from_edges((int)elems.size(), edges);
    auto key = [](const orientation& o) { return key_of(o); };
    if (dot) std::printf("%s", lattice_to_dot(elems, F, key).c_str());
    else std::printf("%s\n", lattice_to_json(elems, F, key).dump().c_str());
  } else if (family == "partitions") {
    partition_lattice L = partition_weak_order(n, bud);
    auto key = [](const ordered_partition& p) { return key_of(p); };
    if (dot) std::printf("%s", lattice_to_dot(L.elems, L.order, key).c_str());
    else std::printf("%s\n", lattice_to_json(L.elems, L.order, key).dump().c_str());
  } else if (family == "schroder") {
    schroder_lattice_t L = schroder_lattice(k, n, bud);
    auto key = [](const hyper_twist& h) { return key_of(h); };
    if (dot) std::printf("%s", lattice_to_dot(L.elems, L.order, key).c_str());
    else std::printf("%s\n", lattice_to_json(L.elems, L.order, key).dump().c_str());
  } else {
    raise(errc::parse_error, "unknown lattice family: " + family);
  }
  return 0;
}

int run_hopf(const std::string& op, const std::string& basis, int k,
             const std::vector<std::string>& args) {
  auto need = [&](size_t count) {
    if (args.size() != count)
      raise(errc::parse_error, "operation expects " + std::to_string(count) + " operands");
  };
  if (basis == "F") {
    if (op == "product") {
      need(2);
      auto s = product_F(formal_sum<perm>(parse_perm(args[0])),
                         formal_sum<perm>(parse_perm(args[1])));
      std::printf("%s\n", render(s, "F").c_str());
    } else {
      need(1);
      auto s = coproduct_F_basis(parse_perm(args[0]));
      std::printf("%s\n", render(s, "F").c_str());
    }
  } else if (basis == "P" || basis == "Q" || basis == "E") {
    if (op == "product") {
      need(2);
      twist a = insert_permutation(k, parse_perm(args[0]));
      twist b = insert_permutation(k, parse_perm(args[1]));
      if (basis == "P") std::printf("%s\n", render(product_P(a, b), "P").c_str());
      else if (basis == "Q") std::printf("%s\n", render(Q_product(a, b), "Q").c_str());
      else std::printf("E[%s]\n", key_of(under_twist(a, b)).c_str());
    } else {
      need(1);
      twist a = insert_permutation(k, parse_perm(args[0]));
      if (basis == "P") std::printf("%s\n", render(coproduct_P(a), "P").c_str());
      else if (basis == "Q") std::printf("%s\n", render(Q_coproduct(a), "Q").c_str());
      else raise(errc::parse_error, "no coproduct rendering for the E basis");
    }
  } else if (basis == "OP") {
    if (op == "product") {
      need(2);
      auto s = hyper_shuffle(parse_partition(args[0]), parse_partition(args[1]));
      std::printf("%s\n", render(s, "F").c_str());
    } else {
      need(1);
      auto s = hyper_coproduct_basis(parse_partition(args[0]));
      std::printf("%s\n", render(s, "F").c_str());
    }
  } else if (basis == "HP") {
    need(op == "product" ? 2 : 1);
    hyper_twist a = insert_ordered_partition(k, parse_partition(args[0]));
    if (op == "product") {
      hyper_twist b = insert_ordered_partition(k, parse_partition(args[1]));
      auto prod = hyper_product(hyperP_expand(a), hyperP_expand(b));
      std::map<hyper_twist, long long> grouped;
      for (auto& [lam, c] : prod.terms) grouped[insert_ordered_partition(k, lam)] += c;
      formal_sum<hyper_twist> out;
      for (auto& [h, c] : grouped) out.add(h, c / (long long)hyper_fiber(h).size());
      std::printf("%s\n", render(out, "P").c_str());
    } else {
      std::printf("%s\n", render(hyperP_expand(a), "F").c_str());
    }
  } else {
    raise(errc::parse_error, "unknown basis: " + basis);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twistlab: twists, lattice quotients, and their Hopf algebras"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  long long budget_limit = default_budget();
  app.add_option("--budget", budget_limit, "node budget for enumerations");
  int jobs = 1;
  app.add_option("--jobs", jobs, "worker threads for the check suites");

  auto* count = app.add_subcommand("count", "count combinatorial families");
  std::string count_family;
  int k = 1, n = 1;
  std::string sig_opt;
  bool alternating = false;
  count->add_option("family", count_family,
                    "twists|acyclic|orientations|indecomposable|twins|cambrian|hypertwists|classes")
      ->required();
  count->add_option("-k", k, "crossing parameter")->required();
  count->add_option("-n", n, "number of pipes");
  count->add_option("-s,--signature", sig_opt, "signature string over +-");
  count->add_flag("--alternating", alternating, "use the alternating signature");

  auto* insert = app.add_subcommand("insert", "insertion of a permutation or ordered partition");
  std::string word, partition_opt, insert_sig;
  insert->add_option("-k", k, "crossing parameter")->required();
  insert->add_option("word", word, "permutation in one-line notation");
  insert->add_option("--partition", partition_opt, "ordered partition such as 3|15|24");
  insert->add_option("-s,--signature", insert_sig, "signature for Cambrian insertion");

  auto* lattice = app.add_subcommand("lattice", "export a lattice");
  std::string lattice_family = "twists";
  bool dot = false, json_out = false;
  lattice->add_option("--family", lattice_family, "twists|orientations|partitions|schroder");
  lattice->add_option("-k", k, "crossing parameter")->required();
  lattice->add_option("-n", n, "number of pipes");
  lattice->add_option("-s,--signature", sig_opt, "Cambrian signature");
  lattice->add_flag("--dot", dot, "emit DOT");
  lattice->add_flag("--json", json_out, "emit JSON (default)");

  auto* hopf = app.add_subcommand("hopf", "products and coproducts");
  std::string hopf_op, basis = "P";
  std::vector<std::string> operands;
  hopf->add_option("operation", hopf_op, "product|coproduct")->required();
  hopf->add_option("--basis", basis, "F|P|Q|E|OP|HP");
  hopf->add_option("-k", k, "crossing parameter");
  hopf->add_option("operands", operands, "permutations or ordered partitions");

  auto* check = app.add_subcommand("check", "run an invariant suite by name");
  std::string check_name = "all";
  check->add_option("name", check_name,
                    "tables|fibers|congruence|triangle|lattice|geometry|hopf|twistiform|ipt|"
                    "cambrian|twins|schroder|all");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*count) return run_count(count_family, k, n, sig_opt, alternating, budget_limit);
    if (*insert) {
      if (word.empty() && partition_opt.empty())
        raise(errc::parse_error, "insert needs a permutation or --partition");
      return run_insert(k, word, partition_opt, insert_sig);
    }
    if (*lattice) {
      (void)json_out;
      return run_lattice(lattice_family, k, n, sig_opt, dot, budget_limit);
    }
    if (*hopf) return run_hopf(hopf_op, basis, k, operands);
    if (*check) return checks::run(check_name, jobs) ? 0 : 1;
  } catch (const error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.code() == errc::budget_exceeded ? 3 : 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}

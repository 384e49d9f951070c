// Command-line driver: verify certificates, run the constructions and
// searches, derive cycle systems.
//
// Exit codes: 0 ok, 1 object invalid, 2 parse or parameter error,
// 3 search completed without finding anything.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "heffter/heffter.hpp"

namespace fs = std::filesystem;
using namespace heffter;

namespace {

constexpr int exit_ok = 0, exit_invalid = 1, exit_usage = 2, exit_not_found = 3;

struct Options {
  bool structured = false;
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool check = true;
};

/// Resolves a certificate path, falling back to $HEFFTER_DATA.
fs::path resolve(const std::string& path) {
  fs::path p(path);
  if (fs::exists(p) || p.is_absolute()) return p;
  if (const char* data = std::getenv("HEFFTER_DATA")) {
    fs::path alt = fs::path(data) / p;
    if (fs::exists(alt)) return alt;
  }
  return p;
}

Certificate load(const std::string& path) {
  const fs::path p = resolve(path);
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(Errc::parse_error, "cannot read " + p.string());
  return parse_certificate(in);
}

void emit(const std::string& text, const Options& opt) {
  if (opt.out.empty() || opt.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw Error(Errc::invalid_argument, "cannot write " + opt.out);
  f << text;
}

void print_report(const CertificateReport& r, const Options& opt, std::ostream& os = std::cout) {
  os << (opt.structured ? r.structured() : r.summary());
}

/// Writes a certificate after optionally re-verifying it.
int emit_certificate(const Certificate& c, const Options& opt) {
  if (opt.check) {
    const auto r = verify_certificate(c);
    if (!r.valid) {
      print_report(r, opt, std::cerr);
      return exit_invalid;
    }
  }
  emit(serialize(c), opt);
  return exit_ok;
}

std::vector<std::uint32_t> parse_list(const std::string& s) {
  std::vector<std::uint32_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const unsigned long v = std::stoul(item, &used);
    if (used != item.size()) throw Error(Errc::invalid_argument, "bad list entry '" + item + "'");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  return out;
}

std::string element_string(const Field& F, Elem e) {
  return F.order() == static_cast<std::uint32_t>(as_prime_power(F.order())->first) ? std::to_string(e.code)
                                                                                   : F.coefficient_string(e);
}

void add_matrix_comments(Certificate& c, const Field& F, const std::vector<std::vector<Elem>>& M) {
  c.comments.push_back("labeling matrix");
  for (const auto& row : M) {
    std::string line;
    for (Elem e : row) line += (line.empty() ? "" : " ") + element_string(F, e);
    c.comments.push_back(line);
  }
}

// verify

int cmd_verify(const std::vector<std::string>& paths, const Options& opt) {
  int worst = exit_ok;
  for (const auto& path : paths) {
    const Certificate c = load(path);
    const auto r = verify_certificate(c);
    if (paths.size() > 1) std::cout << (opt.structured ? "file=" : "file ") << path << "\n";
    print_report(r, opt);
    if (!r.valid) worst = exit_invalid;
  }
  return worst;
}

// construct

struct ConstructArgs {
  std::string what;
  std::uint32_t q = 0, k = 0;
  std::string sizes, ruler;
  bool extend = false, matrix = false;
};

int cmd_construct(const ConstructArgs& a, const Options& opt) {
  const auto& w = a.what;
  if (w == "partial-partition") {
    if (a.q == 0 || a.sizes.empty()) throw Error(Errc::invalid_argument, "--q and --sizes are required");
    const Field F = Field::of_order(a.q);
    std::vector<std::uint64_t> sizes;
    for (auto s : parse_list(a.sizes)) sizes.push_back(s);
    auto c = certificate_for(F, partial_partition_space(F, sizes));
    c.comments.push_back("partial partition of the squares, sizes " + a.sizes);
    return emit_certificate(c, opt);
  }
  if (w == "z41") {
    const Field F = Field::prime(41);
    auto c = certificate_for(F, assemble_space(catalog::z41_systems()));
    c.comments.push_back("three mutually orthogonal (20,4) Heffter systems over Z_41");
    return emit_certificate(c, opt);
  }
  if (w == "develop" || w == "example35" || w == "packing151") {
    std::uint32_t q = a.q;
    DifferencePacking rulers;
    if (w == "example35") {
      q = 71;
      rulers = {catalog::ruler71()};
    } else if (w == "packing151") {
      q = 151;
      rulers = catalog::packing151();
    } else {
      if (q == 0 || a.ruler.empty()) throw Error(Errc::invalid_argument, "--q and --ruler are required");
      std::stringstream ss(a.ruler);
      std::string part;
      while (std::getline(ss, part, ';')) {
        const auto codes = parse_list(part);
        rulers.push_back(make_block(std::span<const std::uint32_t>(codes)));
      }
    }
    const Field F = Field::of_order(q);
    for (auto& B : rulers)
      if (auto o = order_for_simplicity(F, std::span<const Elem>(B))) B = *o;
    HeffterSpace S = develop_packing(F, rulers);
    if (a.extend) S = extend_with_cosets(F, std::move(S));
    auto c = certificate_for(F, S);
    c.comments.push_back(a.extend ? "developed packing extended by the subgroup cosets" : "developed packing");
    return emit_certificate(c, opt);
  }
  if (w == "net163" || w == "net883" || w == "net1459") {
    const std::uint32_t q = static_cast<std::uint32_t>(std::stoul(w.substr(3)));
    const Field F = Field::prime(q);
    const auto net = net_via_roots(F, catalog::net_seed(q));
    auto c = certificate_for(F, net.space);
    c.comments.push_back("net from the roots of unity, q = " + std::to_string(q));
    if (a.matrix) add_matrix_comments(c, F, net.matrix);
    return emit_certificate(c, opt);
  }
  if (w == "ag211") {
    const Field F = catalog::gf243();
    const auto net = net_ag2_11(F, catalog::ag211_labeling(F));
    auto c = certificate_for(F, net.space);
    c.comments.push_back("(121,11;9) net over GF(3^5)");
    if (a.matrix) add_matrix_comments(c, F, net.matrix);
    return emit_certificate(c, opt);
  }
  if (w == "netseed") {
    const Field F = Field::prime(a.q);
    return emit_certificate(netseed_certificate(F, catalog::net_seed(a.q)), opt);
  }
  if (w == "ruler") {
    for (const auto& e : catalog::minimal_rulers())
      if (e.k == a.k) {
        const Field F = Field::prime(e.q);
        return emit_certificate(ruler_certificate(F, e.k, {make_block(std::span<const std::uint32_t>(e.ruler))}), opt);
      }
    throw Error(Errc::invalid_argument, "no tabulated ruler for k = " + std::to_string(a.k));
  }
  throw Error(Errc::invalid_argument, "unknown construction '" + w + "'");
}

// search

struct SearchArgs {
  std::string what;
  std::uint32_t q = 0, k = 0, n = 0, qmax = 0;
  bool all = false;
  std::string mode;
  std::size_t limit = 0;
};

std::string codes_string(std::span<const Elem> xs) {
  std::string s;
  for (Elem x : xs) s += (s.empty() ? "" : " ") + std::to_string(x.code);
  return s;
}

int cmd_search(const SearchArgs& a, const Options& opt) {
  const SearchOptions so{opt.threads, a.limit};
  if (a.what == "weil") {
    if (a.k == 0 || a.n == 0) throw Error(Errc::invalid_argument, "--k and --n are required");
    const auto w = weil_threshold(a.k, a.n);
    const auto q = smallest_guaranteed_order(a.k, a.n);
    std::ostringstream os;
    os.precision(3);
    os << std::fixed;
    if (opt.structured)
      os << "e=" << w.e << "\nt=" << w.t << "\nq_floor=" << w.q_floor << "\nq_value=" << w.q_value
         << "\nsimple_bound=" << w.simple_bound << "\nq_below_simple=" << (w.q_below_simple ? "true" : "false")
         << "\nfirst_order=" << q << "\n";
    else
      os << "Q(" << w.e << "," << w.t << ") = " << w.q_value << " (floor " << w.q_floor << ")\n"
         << "8k^5n = " << w.simple_bound << (w.q_below_simple ? " > Q" : " <= Q") << "\n"
         << "first admissible prime power above 8k^5n: " << q << "\n";
    emit(os.str(), opt);
    return exit_ok;
  }
  if (a.what == "inequivalent") {
    if (a.k == 0 || a.qmax == 0) throw Error(Errc::invalid_argument, "--k and --qmax are required");
    std::ostringstream os;
    for (auto q : admissible_orders(a.k, 1, a.qmax)) {
      if (std::uint64_t{a.k} * (a.k - 1) > (q - 1) / 2 - 1) continue;
      std::cerr << "q=" << q << "\n";
      const auto r = enumerate_inequivalent_rulers(Field::of_order(static_cast<std::uint32_t>(q)), a.k, so);
      os << (opt.structured ? "q=" : "") << q << (opt.structured ? " r=" : " ") << r.count << "\n";
    }
    emit(os.str(), opt);
    return exit_ok;
  }
  if (a.q == 0) throw Error(Errc::invalid_argument, "--q is required");
  const Field F = Field::of_order(a.q);
  if (a.what == "ruler") {
    if (a.k == 0) throw Error(Errc::invalid_argument, "--k is required");
    const bool all = a.all || a.mode == "all";
    if (!a.mode.empty() && a.mode != "all" && a.mode != "first") throw Error(Errc::invalid_argument, "--mode is first or all");
    if (!all) {
      const auto r = search_rulers(F, a.k, SearchMode::first, so);
      if (r.empty()) {
        std::cout << "NOT-FOUND\n";
        return exit_not_found;
      }
      return emit_certificate(ruler_certificate(F, a.k, {r[0]}), opt);
    }
    const auto rulers = search_rulers(F, a.k, SearchMode::all, so);
    std::vector<std::vector<Elem>> classes;
    for (const auto& B : rulers) classes.push_back(ruler_canonical_form(F, std::span<const Elem>(B)));
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    std::ostringstream os;
    os << "rulers=" << rulers.size() << "\nclasses=" << classes.size() << "\n";
    for (const auto& c : classes) os << "class " << codes_string(c) << "\n";
    if (a.limit) os << "# limited to " << a.limit << " rulers\n";
    emit(os.str(), opt);
    return rulers.empty() ? exit_not_found : exit_ok;
  }
  if (a.what == "packing") {
    if (a.k == 0 || a.n == 0) throw Error(Errc::invalid_argument, "--k and --n are required");
    const std::string mode = a.mode.empty() ? "exhaustive" : a.mode;
    if (mode != "exhaustive" && mode != "greedy") throw Error(Errc::invalid_argument, "--mode is exhaustive or greedy");
    const auto p = search_packing(F, a.k, a.n, mode == "greedy" ? PackingMode::greedy : PackingMode::exhaustive,
                                  opt.seed, so);
    if (!p) {
      std::cout << "NOT-FOUND\n";
      return exit_not_found;
    }
    return emit_certificate(ruler_certificate(F, a.k, *p), opt);
  }
  if (a.what == "netseed") {
    NetSearchOptions no;
    no.threads = opt.threads;
    if (a.mode == "randomized") {
      no.strategy = SeedStrategy::randomized;
      if (!opt.seed) throw Error(Errc::invalid_argument, "--mode randomized requires --seed");
      no.seed = *opt.seed;
      if (a.limit) no.max_trials = a.limit;
    } else if (!a.mode.empty() && a.mode != "backtrack") {
      throw Error(Errc::invalid_argument, "--mode is backtrack or randomized");
    }
    const auto s = search_net_seed(F, no);
    if (!s) {
      std::cout << "NOT-FOUND\n";
      return exit_not_found;
    }
    return emit_certificate(netseed_certificate(F, *s), opt);
  }
  throw Error(Errc::invalid_argument, "unknown search '" + a.what + "'");
}

// cycles

int cmd_cycles_derive(const std::string& path, const std::string& materialize, bool reorder, const Options& opt) {
  Certificate c = load(path);
  if (c.kind != "space" && c.kind != "system") throw Error(Errc::invalid_argument, "derive needs a space or system");
  const Field F = c.field();
  const auto rep = verify_certificate(c);
  if (!rep.valid) {
    print_report(rep, opt, std::cerr);
    return exit_invalid;
  }
  if (reorder)
    for (auto& [name, blocks] : c.classes)
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        auto o = quick_simple_ordering(F, std::span<const Elem>(blocks[b]), opt.seed.value_or(1));
        if (!o) {
          std::cerr << "class " << name << ": block " << b << " " << format_block(blocks[b]) << " has no simple ordering\n";
          return exit_invalid;
        }
        blocks[b] = *o;
      }
  std::vector<std::vector<Cycle>> sets;
  const auto S = space_of(c);
  for (std::size_t i = 0; i < S.classes.size(); ++i) {
    try {
      sets.push_back(base_cycles(F, HeffterSystem{S.halfset, S.classes[i]}));
    } catch (const Error& e) {
      if (e.code() != Errc::not_simple) throw;
      std::cerr << "class " << c.classes[i].first << ": " << e.what() << "\n";
      return exit_invalid;
    }
  }
  if (!materialize.empty()) {
    std::ofstream f(materialize, std::ios::binary);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      f << "system F" << i + 1 << "\n";
      for (const auto& cyc : develop_cycle_system(F, sets[i]).cycles) f << "cycle " << codes_string(canonical_cycle(cyc)) << "\n";
    }
  }
  auto out = basecycles_certificate(F, sets);
  out.comments.push_back("partial-sum cycles of " + fs::path(path).filename().string());
  return emit_certificate(out, opt);
}

int cmd_cycles_orthogonal(const std::string& path, const Options& opt) {
  const Certificate c = load(path);
  if (c.kind != "basecycles") throw Error(Errc::invalid_argument, "orthogonal needs a basecycles certificate");
  const Field F = c.field();
  const auto sets = cycle_sets_of(c);
  std::vector<CycleSystem> systems;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto rep = verify_base_cycles(F, sets[i]);
    if (!rep.ok) {
      std::cout << c.classes[i].first << " " << rep.summary();
      return exit_invalid;
    }
    systems.push_back(develop_cycle_system(F, sets[i]));
  }
  bool all = true;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < systems.size(); ++i)
    for (std::size_t j = i + 1; j < systems.size(); ++j) {
      const auto r = cycle_systems_orthogonal(systems[i], systems[j], opt.threads);
      ++pairs;
      all = all && r.orthogonal;
      std::cout << (opt.structured ? "pair." : "pair ") << c.classes[i].first << "," << c.classes[j].first
                << (opt.structured ? "=" : " ") << (r.orthogonal ? "orthogonal" : "not-orthogonal") << "\n";
    }
  std::cout << (opt.structured ? "pairs=" : "pairs ") << pairs << "\n"
            << (opt.structured ? "orthogonal=" : "orthogonal ") << (all ? "true" : "false") << "\n";
  return all ? exit_ok : exit_invalid;
}

int cmd_cycles_sts(std::uint32_t v, const Options& opt) {
  if (!opt.seed) throw Error(Errc::invalid_argument, "--seed is required");
  const auto r = find_super_orthogonal_pair(v, *opt.seed);
  if (!r.pair) {
    std::cout << "NOT-FOUND\n";
    return exit_not_found;
  }
  std::ostringstream os;
  os << "# super-orthogonal STS(" << v << ") pair, seed " << *opt.seed << "\n";
  for (const auto* S : {&r.pair->first, &r.pair->second}) {
    os << "sts " << v << "\n";
    for (const auto& t : S->triples) os << "triple " << t[0] << " " << t[1] << " " << t[2] << "\n";
  }
  emit(os.str(), opt);
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heffter systems, spaces, rulers and cycle systems"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--structured", opt.structured, "key=value output");
  app.add_option("--threads", opt.threads, "worker threads (0 = all cores)");
  app.add_option("--seed", opt.seed, "random seed");
  app.add_option("--out,-o", opt.out, "output file (default stdout)");
  app.add_flag("--check,!--no-check", opt.check, "verify before writing (default on)");

  auto* verify = app.add_subcommand("verify", "verify certificate files");
  std::vector<std::string> verify_paths;
  verify->add_option("files", verify_paths, "certificate files")->required();

  auto* construct = app.add_subcommand("construct", "run a construction");
  ConstructArgs ca;
  construct->add_option("what", ca.what,
                        "partial-partition | develop | example35 | packing151 | z41 | net163 | net883 | net1459 | ag211 "
                        "| netseed | ruler")
      ->required()
      ->check(CLI::IsMember({"partial-partition", "develop", "example35", "packing151", "z41", "net163", "net883",
                             "net1459", "ag211", "netseed", "ruler"}));
  construct->add_option("--q", ca.q, "field order");
  construct->add_option("--k", ca.k, "block size");
  construct->add_option("--sizes", ca.sizes, "comma-separated block sizes");
  construct->add_option("--ruler", ca.ruler, "ruler codes, comma-separated; rulers separated by ';'");
  construct->add_flag("--extend", ca.extend, "add the subgroup cosets as a further class");
  construct->add_flag("--matrix", ca.matrix, "include the labeling matrix as comments");

  auto* search = app.add_subcommand("search", "run a search");
  SearchArgs sa;
  search->add_option("what", sa.what, "ruler | inequivalent | packing | netseed | weil")
      ->required()
      ->check(CLI::IsMember({"ruler", "inequivalent", "packing", "netseed", "weil"}));
  search->add_option("--q", sa.q, "field order");
  search->add_option("--k", sa.k, "ruler length");
  search->add_option("--n", sa.n, "number of rulers, or the weil parameter n");
  search->add_option("--qmax", sa.qmax, "largest order for the inequivalent table");
  search->add_flag("--all", sa.all, "every normalized ruler");
  search->add_option("--mode", sa.mode, "first|all, exhaustive|greedy, backtrack|randomized");
  search->add_option("--limit", sa.limit, "cap on results or random trials");

  auto* cycles = app.add_subcommand("cycles", "cycle systems");
  cycles->require_subcommand(1);
  cycles->fallthrough();
  auto* derive = cycles->add_subcommand("derive", "base cycles from a space certificate");
  std::string derive_path, materialize;
  derive->add_option("file", derive_path)->required();
  derive->add_option("--materialize", materialize, "write every developed cycle to this file");
  bool reorder = false;
  derive->add_flag("--reorder", reorder, "reorder non-simple blocks first (seeded shuffles)");
  auto* orth = cycles->add_subcommand("orthogonal", "pairwise orthogonality of base-cycle systems");
  std::string orth_path;
  orth->add_option("file", orth_path)->required();
  auto* sts = cycles->add_subcommand("sts", "find a super-orthogonal pair of Steiner triple systems");
  std::uint32_t sts_v = 19;
  sts->add_option("--v", sts_v, "order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*verify) return cmd_verify(verify_paths, opt);
    if (*construct) return cmd_construct(ca, opt);
    if (*search) return cmd_search(sa, opt);
    if (*derive) return cmd_cycles_derive(derive_path, materialize, reorder, opt);
    if (*orth) return cmd_cycles_orthogonal(orth_path, opt);
    if (*sts) return cmd_cycles_sts(sts_v, opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}

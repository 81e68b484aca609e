#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grpd/builders.hpp"
#include "grpd/center_commutator.hpp"
#include "grpd/checks.hpp"
#include "grpd/errors.hpp"
#include "grpd/groupoid.hpp"
#include "grpd/inner.hpp"
#include "grpd/morphisms.hpp"
#include "grpd/normality.hpp"
#include "grpd/subgroupoid.hpp"
#include "grpd/textio.hpp"

namespace grpd::cli {

/** Exit codes: 0 ok/true, 1 predicate false, 2 parse, 3 axioms, 4 usage. */
enum ExitCode : int {
  exit_ok = 0,
  exit_false = 1,
  exit_parse = 2,
  exit_axioms = 3,
  exit_usage = 4,
};

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::size_t parse_count(const std::string& s, const char* what) {
  if (s.empty() || s.size() > 3) throw UsageError(std::string(what) + " must be a small number");
  std::size_t n = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw UsageError(std::string(what) + " must be a number");
    n = n * 10 + static_cast<std::size_t>(c - '0');
  }
  if (n == 0 || n > 64) throw UsageError(std::string(what) + " must be between 1 and 64");
  return n;
}

inline GroupTable named_group(const std::string& name) {
  auto t = group_by_name(name);
  if (!t)
    throw UsageError("unknown group '" + name + "' (use Z<n>, S3 or D4)");
  return *t;
}

inline Groupoid build_from_args(const std::string& kind, const std::vector<std::string>& args) {
  if (kind == "one_object") {
    if (args.size() != 1) throw UsageError("build one_object takes one group name");
    return one_object(named_group(args[0]));
  }
  if (kind == "pair") {
    if (args.size() != 1) throw UsageError("build pair takes one object count");
    return pair_groupoid(parse_count(args[0], "object count"));
  }
  if (kind == "bundle") {
    if (args.empty()) throw UsageError("build bundle takes at least one group name");
    std::vector<GroupTable> fibers;
    for (const auto& a : args) fibers.push_back(named_group(a));
    return group_bundle(fibers);
  }
  if (kind == "product") {
    if (args.size() != 2) throw UsageError("build product takes an object count and a group name");
    return groupoid_product(parse_count(args[0], "object count"), named_group(args[1]));
  }
  throw UsageError("unknown build kind '" + kind + "' (one_object, pair, bundle, product)");
}

inline std::string stem_of(const std::string& path) {
  std::string stem = std::filesystem::path(path).stem().string();
  return stem.empty() ? "H" : stem;
}

inline SubgroupoidView view_from_file(const Groupoid& g, const std::string& path) {
  std::vector<std::string> toks = parse_subset(read_file(path));
  return SubgroupoidView(g, g.elems(toks), stem_of(path));
}

inline std::vector<Elem> seed_from_file(const Groupoid& g, const std::string& path) {
  return g.elems(parse_subset(read_file(path)));
}

inline std::size_t iso_bound_from_env() {
  const char* env = std::getenv("GRPD_BOUND");
  if (!env) return default_iso_bound();
  std::string s(env);
  std::size_t n = 0;
  for (char c : s) {
    if (c < '0' || c > '9' || s.size() > 6)
      throw UsageError("GRPD_BOUND must be a positive integer, got '" + s + "'");
    n = n * 10 + static_cast<std::size_t>(c - '0');
  }
  if (n == 0) throw UsageError("GRPD_BOUND must be a positive integer, got '" + s + "'");
  return n;
}

inline void print_members(const SubgroupoidView& v, std::ostream& out) {
  for (Elem m : v.members()) out << v.parent().token(m) << "\n";
}

inline const char* yesno(bool b) { return b ? "yes" : "no"; }

}  // namespace detail

/**
 * Runs one CLI invocation; args exclude the program name.  All output goes
 * to the given streams, so the same table always produces the same bytes.
 */
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite groupoid toolkit: partial tables, subgroupoids, normality,\n"
               "quotients, morphisms, centers, commutators and inner isomorphisms"};
  app.name("grpd");
  app.require_subcommand(1);

  std::string file, second_file, sub_path, set_path, map_path, out_path, kind;
  std::string format = "text";
  std::vector<std::string> build_args;
  bool wide = false;

  CLI::App* c_validate = app.add_subcommand("validate", "check a table against the axioms");
  c_validate->add_option("file", file, "groupoid file")->required();

  CLI::App* c_info = app.add_subcommand("info", "carrier, identities, isotropy, commutativity");
  c_info->add_option("file", file, "groupoid file")->required();

  CLI::App* c_build =
      app.add_subcommand("build", "construct one_object | pair | bundle | product");
  c_build->add_option("kind", kind, "one_object, pair, bundle or product")->required();
  c_build->add_option("args", build_args, "kind arguments");
  c_build->add_option("-o,--out", out_path, "output file")->required();

  CLI::App* c_subgroupoid = app.add_subcommand("subgroupoid", "closure of a generating set");
  c_subgroupoid->add_option("file", file, "groupoid file")->required();
  c_subgroupoid->add_option("-g,--generate", set_path, "generator token file")->required();
  c_subgroupoid->add_flag("-w,--wide", wide, "include all identities");

  CLI::App* c_normal = app.add_subcommand("normal", "test a member set for normality");
  c_normal->add_option("file", file, "groupoid file")->required();
  c_normal->add_option("-s,--sub", sub_path, "member token file")->required();

  CLI::App* c_normalizer = app.add_subcommand("normalizer", "N_G(H) of a wide subgroupoid");
  c_normalizer->add_option("file", file, "groupoid file")->required();
  c_normalizer->add_option("-s,--sub", sub_path, "member token file")->required();

  CLI::App* c_closure = app.add_subcommand("closure", "smallest normal subgroupoid over a set");
  c_closure->add_option("file", file, "groupoid file")->required();
  c_closure->add_option("-s,--set", set_path, "seed token file")->required();

  CLI::App* c_quotient = app.add_subcommand("quotient", "coset groupoid by a normal subgroupoid");
  c_quotient->add_option("file", file, "groupoid file")->required();
  c_quotient->add_option("-s,--sub", sub_path, "member token file")->required();
  c_quotient->add_option("-o,--out", out_path, "output file")->required();

  CLI::App* c_center = app.add_subcommand("center", "central isotropy arrows Z(G)");
  c_center->add_option("file", file, "groupoid file")->required();

  CLI::App* c_commutator = app.add_subcommand("commutator", "derived subgroupoid G'");
  c_commutator->add_option("file", file, "groupoid file")->required();

  CLI::App* c_abelianize = app.add_subcommand("abelianize", "write G/G'");
  c_abelianize->add_option("file", file, "groupoid file")->required();
  c_abelianize->add_option("-o,--out", out_path, "output file")->required();

  CLI::App* c_inner = app.add_subcommand("inner", "distinct inner isomorphisms I_g");
  c_inner->add_option("file", file, "groupoid file")->required();

  CLI::App* c_checkmap = app.add_subcommand("checkmap", "test a token map between two groupoids");
  c_checkmap->add_option("source", file, "source groupoid file")->required();
  c_checkmap->add_option("target", second_file, "target groupoid file")->required();
  c_checkmap->add_option("-m,--map", map_path, "mapping file with 'x -> y' lines")->required();

  CLI::App* c_verify = app.add_subcommand("verify", "run the structural check suite");
  c_verify->add_option("file", file, "groupoid file")->required();
  c_verify->add_option("-f,--format", format, "text or lines")
      ->check(CLI::IsMember({"text", "lines"}));

  try {
    std::reverse(args.begin(), args.end());  // CLI11's vector overload wants it reversed
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (c_validate->parsed()) {
      Groupoid g = load_groupoid_file(file);
      out << "ok: '" << g.name() << "' with " << g.size() << " elements, "
          << g.identities().size() << " identities\n";
      return exit_ok;
    }

    if (c_info->parsed()) {
      Groupoid g = load_groupoid_file(file);
      out << "name: " << g.name() << "\n";
      out << "elements: " << g.size() << "\n";
      out << "identities: " << g.identities().size() << "\n";
      out << "isotropy:";
      for (Elem e : g.identities())
        out << " " << g.token(e) << ":" << g.isotropy_members(e).size();
      out << "\n";
      out << "abelian: " << detail::yesno(g.is_abelian()) << "\n";
      return exit_ok;
    }

    if (c_build->parsed()) {
      Groupoid g = detail::build_from_args(kind, build_args);
      save_groupoid_file(g, out_path);
      out << "wrote " << out_path << " (" << g.size() << " elements)\n";
      return exit_ok;
    }

    if (c_subgroupoid->parsed()) {
      Groupoid g = load_groupoid_file(file);
      std::vector<Elem> seed = detail::seed_from_file(g, set_path);
      SubgroupoidView h = wide ? generate_wide(g, seed, detail::stem_of(set_path))
                               : generate(g, seed, detail::stem_of(set_path));
      detail::print_members(h, out);
      return exit_ok;
    }

    if (c_normal->parsed()) {
      Groupoid g = load_groupoid_file(file);
      SubgroupoidView h = detail::view_from_file(g, sub_path);
      NormalityCheck nc = check_normal(g, h);
      out << "wide: " << detail::yesno(nc.wide) << "\n";
      out << "stable: " << detail::yesno(nc.stable) << "\n";
      out << "normal: " << detail::yesno(nc.normal()) << "\n";
      if (!nc.normal() && !nc.witness.empty()) {
        out << "witness:";
        for (const auto& w : nc.witness) out << " " << w;
        out << "\n";
      }
      return nc.normal() ? exit_ok : exit_false;
    }

    if (c_normalizer->parsed()) {
      Groupoid g = load_groupoid_file(file);
      SubgroupoidView h = detail::view_from_file(g, sub_path);
      detail::print_members(normalizer(g, h), out);
      return exit_ok;
    }

    if (c_closure->parsed()) {
      Groupoid g = load_groupoid_file(file);
      detail::print_members(
          normal_closure(g, detail::seed_from_file(g, set_path), detail::stem_of(set_path)), out);
      return exit_ok;
    }

    if (c_quotient->parsed()) {
      Groupoid g = load_groupoid_file(file);
      SubgroupoidView h = detail::view_from_file(g, sub_path);
      Quotient q = quotient(g, h);
      save_groupoid_file(*q.groupoid, out_path);
      out << "wrote " << out_path << " (" << q.groupoid->size() << " cosets)\n";
      return exit_ok;
    }

    if (c_center->parsed()) {
      Groupoid g = load_groupoid_file(file);
      detail::print_members(center(g), out);
      return exit_ok;
    }

    if (c_commutator->parsed()) {
      Groupoid g = load_groupoid_file(file);
      detail::print_members(derived_subgroupoid(g), out);
      return exit_ok;
    }

    if (c_abelianize->parsed()) {
      Groupoid g = load_groupoid_file(file);
      Abelianization ab = abelianize(g);
      save_groupoid_file(*ab.quotient.groupoid, out_path);
      out << "wrote " << out_path << " (" << ab.quotient.groupoid->size() << " cosets)\n";
      return exit_ok;
    }

    if (c_inner->parsed()) {
      Groupoid g = load_groupoid_file(file);
      MapGroupoid ig = inner_iso_groupoid(g);
      out << "inner isomorphisms: " << ig.maps.size() << "\n";
      for (std::size_t i = 0; i < ig.maps.size(); ++i) {
        const PartialIso& f = ig.maps[i];
        out << ig.groupoid->token(i) << " " << g.token(f.dom_base) << " -> "
            << g.token(f.ran_base) << " |";
        for (std::size_t k = 0; k < f.dom.size(); ++k)
          out << " " << g.token(f.dom[k]) << "->" << g.token(f.image[k]);
        out << "\n";
      }
      return exit_ok;
    }

    if (c_checkmap->parsed()) {
      Groupoid a = load_groupoid_file(file);
      Groupoid b = load_groupoid_file(second_file);
      GroupoidMap f = map_from_pairs(a, b, parse_mapping(read_file(map_path)),
                                     detail::stem_of(map_path));
      HomCheck hc = check_map(f);
      auto line = [&](const char* label, bool okflag, const std::vector<std::string>& witness) {
        out << label << ": " << detail::yesno(okflag);
        if (!okflag && !witness.empty()) {
          out << " (witness:";
          for (const auto& w : witness) out << " " << w;
          out << ")";
        }
        out << "\n";
      };
      line("homomorphism", hc.is_hom, hc.hom_witness);
      line("strong", hc.is_strong, hc.strong_witness);
      line("injective", hc.is_injective, hc.injective_witness);
      line("surjective", hc.is_surjective, hc.surjective_witness);
      return (hc.is_hom && hc.is_strong) ? exit_ok : exit_false;
    }

    if (c_verify->parsed()) {
      CheckOptions opts;
      opts.iso_bound = detail::iso_bound_from_env();
      ParsedGroupoid parsed = parse_grpd(read_file(file));
      std::optional<Groupoid> g;
      try {
        g.emplace(std::move(parsed.table), parsed.name);
      } catch (const AxiomViolation& e) {
        if (format == "lines") {
          out << "VERIFY " << parsed.name << " invalid\n";
          out << "CHECK AXIOMS FAIL " << e.what() << "\n";
        } else {
          out << "verification of '" << parsed.name << "'\n";
          out << "  AXIOMS    FAIL  (" << e.what() << ")\n";
        }
        return exit_axioms;
      }
      CheckReport rep = run_checks(*g, opts);
      if (format == "lines")
        print_report_lines(rep, out);
      else
        print_report_text(rep, out);
      return rep.all_pass() ? exit_ok : exit_false;
    }

    err << "no subcommand selected\n";
    return exit_usage;
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_parse;
  } catch (const AxiomViolation& e) {
    err << "error: " << e.what() << "\n";
    return exit_axioms;
  } catch (const UnknownElement& e) {
    err << "error: " << e.what() << "\n";
    return exit_parse;
  } catch (const BoundExceeded& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_false;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_false;
  }
}

}  // namespace grpd::cli

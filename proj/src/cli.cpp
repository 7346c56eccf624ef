#include "magball/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "magball/io.hpp"

namespace magball::cli {

namespace {

using io::Json;

// ---------------------------------------------------------------------------
// helpers

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw DomainError(path + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out, std::string& primary) {
  primary += text;
  if (out_path.empty() || out_path == "-") {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw DomainError("cannot write " + out_path);
  f << text;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

IntVector parse_list(const std::string& text) {
  IntVector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError("malformed integer list entry \"" + item + "\"");
    }
  }
  return out;
}

Json bt_json(const BtSet& a) {
  return Json{{"N", a.modulus}, {"elements", a.elements}, {"t", a.t}, {"provenance", to_string(a.provenance)}};
}

Json splitter_doc(const std::string& family, const char* claim, const SplitterSet& s) {
  return Json{{"family", family},
              {"claim", claim},
              {"splitter", io::to_json(s)},
              {"density", io::density_record(ball_of(s), s.group().order())}};
}

// ---------------------------------------------------------------------------
// construct

struct ConstructParams {
  std::string family;
  std::int64_t p = 2, m = 2, d = 5, q = 4, t = 2, kplus = 1, kminus = 0, n_mod = 0, k = 2, size = 4;
  std::int64_t dim = 2, digits = 1;
  double epsilon = 0.25;
  std::uint64_t seed = 1;
  std::uint64_t budget = 10'000'000;
  std::string set = "s1";
  std::string elements;
  std::string out;
};

BtSet pick_bt_set(const ConstructParams& c) {
  if (!c.elements.empty()) {
    if (c.n_mod < 1) throw DomainError("--elements needs --N");
    auto elems = parse_list(c.elements);
    auto check = is_bt_set(elems, c.n_mod, static_cast<int>(c.t));
    if (!check.ok) throw DomainError("--elements is not a B_t[N;1] set");
    std::sort(elems.begin(), elems.end());
    return BtSet{c.n_mod, elems, static_cast<int>(c.t), BtSet::Provenance::given};
  }
  if (c.set == "s1") return bose_chowla_s1(static_cast<std::uint64_t>(c.q), static_cast<int>(c.t));
  if (c.set == "s2") return bose_chowla_s2(static_cast<std::uint64_t>(c.q), static_cast<int>(c.t)).set;
  throw DomainError("--set must be s1 or s2");
}

Json construct(const ConstructParams& c, int jobs) {
  const auto& f = c.family;
  if (f == "bch-lattice") {
    if (c.p < 2 || c.m < 1) throw DomainError("bch-lattice needs --p prime and --m >= 1");
    auto b = bch_code(static_cast<std::uint32_t>(c.p), static_cast<unsigned>(c.m), static_cast<int>(c.d));
    auto l = code_lattice(b.code, c.kplus, c.kminus);
    BallSpec ball{b.code.n(), std::min<int>((b.designed_distance - 1) / 2, b.code.n()), c.kplus, c.kminus};
    Json info{{"n", b.code.n()},
              {"k", b.code.k()},
              {"designed_distance", b.designed_distance},
              {"narrow_sense_dimension", b.narrow_sense_dimension},
              {"formula_dimension", b.formula_dimension},
              {"expurgated", b.expurgated},
              {"in_guaranteed_range", b.in_guaranteed_range}};
    if (ipow(BigInt(b.code.p()), b.code.k()) <= limits().codewords)
      info["minimum_distance"] = minimum_distance(b.code);
    return Json{{"family", f},         {"claim", "packing"},
                {"lattice", io::to_json(l)}, {"ball", io::to_json(ball)},
                {"code", io::to_json(b.code)}, {"bch", info},
                {"density", io::density_record(ball, l.volume())}};
  }
  if (f == "bose-chowla-10") {
    auto a = pick_bt_set(c);
    auto doc = splitter_doc(f, "packing", bt_shift_to_splitter(a));
    doc["bt_set"] = bt_json(a);
    return doc;
  }
  if (f == "bose-chowla-11") {
    auto a = pick_bt_set(c);
    auto doc = splitter_doc(f, "packing", bt_pm1_splitter(a, static_cast<int>(c.t)));
    doc["bt_set"] = bt_json(a);
    return doc;
  }
  if (f == "sidon-2fold") {
    if (c.n_mod < 1) throw DomainError("sidon-2fold needs --N");
    auto r = search_kfold_sidon(c.n_mod, static_cast<int>(c.k), static_cast<int>(c.size), c.budget);
    auto doc = splitter_doc(f, "packing", kfold_sidon_splitter(r.best, c.kplus, c.kminus));
    doc["sidon"] = Json{{"N", r.best.modulus},
                        {"k", r.best.k},
                        {"elements", r.best.elements},
                        {"reached", r.reached},
                        {"exhaustive", r.exhaustive}};
    return doc;
  }
  if (f == "behrend-ruzsa") {
    auto r = behrend_ruzsa_splitter(c.kplus, c.kminus, static_cast<int>(c.dim), static_cast<int>(c.digits), c.p);
    auto doc = splitter_doc(f, "packing", r.splitter);
    doc["m"] = r.m;
    doc["alpha"] = behrend_alpha(c.kplus);
    return doc;
  }
  if (f == "covering-product") {
    if (c.p < 2 || c.m < 1) throw DomainError("covering-product needs --p prime and --m >= 1");
    auto base = covering_base_split(static_cast<std::uint32_t>(c.p), static_cast<unsigned>(c.m), c.kplus, c.kminus);
    auto doc = splitter_doc(f, "covering", product_splitter(base, static_cast<int>(c.t)));
    doc["base"] = io::to_json(base);
    return doc;
  }
  if (f == "lambda-random") {
    if (c.n_mod < 2) throw DomainError("lambda-random needs --N");
    auto r = sample_lambda_splitter(c.n_mod, static_cast<int>(c.t), c.kplus, c.kminus, c.epsilon, c.seed, jobs);
    auto doc = splitter_doc(f, "lambda", *r.splitter);
    doc["lambda"] = r.lambda;
    doc["size"] = r.splitter->n();
    doc["size_in_range"] = r.size_in_range;
    doc["window"] = Json::array({fixed6(r.window_low), fixed6(r.window_high)});
    doc["inclusion_probability"] = fixed6(r.inclusion_probability);
    doc["attempts"] = r.attempts;
    doc["seed"] = c.seed;
    doc["histogram"] = io::to_json(r.histogram)["histogram"];
    return doc;
  }
  throw DomainError("unknown family \"" + f + "\"");
}

// ---------------------------------------------------------------------------
// verify

struct Loaded {
  std::optional<SplitterSet> splitter;
  std::optional<LatticeBasis> lattice;
  std::optional<BallSpec> ball;
  std::optional<std::uint64_t> lambda_claim;
};

Loaded load_instance(const Json& doc, const std::string& ball_text) {
  Loaded l;
  if (doc.contains("splitter")) {
    l.splitter = io::splitter_from_json(doc["splitter"]);
  } else if (doc.contains("lattice")) {
    l.lattice = io::lattice_from_json(doc["lattice"]);
  } else if (doc.contains("group")) {
    l.splitter = io::splitter_from_json(doc);
  } else if (doc.contains("rows")) {
    l.lattice = io::lattice_from_json(doc);
  } else {
    throw DomainError("input holds neither a splitter set nor a lattice basis");
  }
  if (!ball_text.empty()) {
    try {
      l.ball = io::ball_from_json(Json::parse(ball_text));
    } catch (const Json::parse_error&) {
      l.ball = io::ball_from_json(read_json(ball_text));
    }
  } else if (doc.contains("ball") && doc["ball"].is_object() && doc["ball"].contains("n")) {
    l.ball = io::ball_from_json(doc["ball"]);
  }
  if (l.splitter && !l.ball) l.ball = ball_of(*l.splitter);
  if (!l.ball) throw DomainError("a lattice needs a ball (--ball or a \"ball\" key)");
  if (doc.contains("lambda") && doc["lambda"].is_number_unsigned()) l.lambda_claim = doc["lambda"].get<std::uint64_t>();
  return l;
}

int verify(const std::string& kind, const Loaded& in, std::optional<std::uint64_t> lambda_claim, int jobs,
           Json& report) {
  report = Json{{"kind", kind}};
  Json oracles = Json::object(), skipped = Json::object();
  std::vector<bool> verdicts;

  std::optional<LatticeBasis> lattice = in.lattice;
  if (in.splitter) {
    if (in.ball && !(*in.ball == ball_of(*in.splitter)))
      throw DomainError("the ball must match the splitter set (n, t, kplus, kminus)");
    try {
      lattice = kernel_lattice(*in.splitter);
    } catch (const ResourceError& e) {
      skipped["geometric"] = e.what();
    }
  }
  const BallSpec ball = *in.ball;
  auto claim = lambda_claim ? lambda_claim : in.lambda_claim;

  auto geometric = [&](auto&& fn) {
    if (!lattice) return;
    try {
      fn();
    } catch (const ResourceError& e) {
      skipped["geometric"] = e.what();
    }
  };

  if (kind == "packing") {
    if (in.splitter) {
      auto r = check_partial_split(*in.splitter, jobs);
      oracles["splitting"] = io::to_json(r);
      verdicts.push_back(r.verified());
    }
    geometric([&] {
      auto g = verify_packing_geometric(*lattice, ball, jobs);
      oracles["geometric"] = io::to_json(g);
      verdicts.push_back(g.verified());
    });
    if (!in.splitter) {
      try {
        auto g = reference::verify_packing_pairwise(*lattice, ball);
        oracles["pairwise"] = io::to_json(g);
        verdicts.push_back(g.verified());
      } catch (const ResourceError& e) {
        skipped["pairwise"] = e.what();
      }
    }
  } else if (kind == "covering") {
    if (in.splitter) {
      auto r = check_complete_split(*in.splitter, jobs);
      oracles["splitting"] = io::to_json(r);
      verdicts.push_back(r.verified());
    }
    geometric([&] {
      auto g = verify_covering_geometric(*lattice, ball, jobs);
      auto j = io::to_json(g);
      bool ok = g.verified();
      if (in.splitter) {
        // a covering only completes the image of phi; the split needs all of G
        const bool onto = lattice->volume() == in.splitter->group().order();
        j["surjective"] = onto;
        ok = ok && onto;
      }
      oracles["geometric"] = j;
      verdicts.push_back(ok);
    });
  } else if (kind == "lambda") {
    std::optional<std::uint64_t> seen;
    bool consistent = true;
    if (in.splitter) {
      auto r = multiplicity_histogram(*in.splitter, jobs);
      oracles["splitting"] = io::to_json(r);
      seen = r.lambda;
    }
    geometric([&] {
      auto g = lambda_geometric(*lattice, ball, jobs);
      oracles["geometric"] = io::to_json(g);
      if (seen && *seen != *g.lambda) consistent = false;
      seen = g.lambda;
    });
    if (!seen) throw ResourceError("no lambda oracle could run within the limits");
    report["lambda"] = *seen;
    if (!consistent) {
      verdicts = {true, false};
    } else {
      const bool ok = !claim || *seen <= *claim;
      if (claim) report["claimed_lambda"] = *claim;
      verdicts.push_back(ok);
    }
  } else {
    throw DomainError("verify kind must be packing, covering or lambda");
  }

  report["oracles"] = oracles;
  if (!skipped.empty()) report["skipped"] = skipped;
  const bool all = std::all_of(verdicts.begin(), verdicts.end(), [](bool b) { return b; });
  const bool none = std::none_of(verdicts.begin(), verdicts.end(), [](bool b) { return b; });
  if (!all && !none) {
    report["verdict"] = "disagreement";
    return disagreement;
  }
  report["verdict"] = all ? "verified" : "refuted";
  return all ? ok : refuted;
}

// ---------------------------------------------------------------------------
// decode

struct Decoder {
  std::optional<S2DecoderContext> s2;
  std::optional<ModPDecoderContext> modp;

  DecodeResult run(std::span<const std::int64_t> y) const { return s2 ? decode_s2(*s2, y) : decode_mod_p(*modp, y); }
};

Decoder load_decoder(const Json& ctx) {
  Decoder d;
  if (ctx.contains("code") && ctx.contains("ball") && !ctx.contains("kind")) {
    auto b = io::ball_from_json(ctx["ball"]);
    d.modp.emplace(io::code_from_json(ctx["code"]), b.kplus, b.kminus);
    return d;
  }
  const auto kind = io::require(ctx, "kind").get<std::string>();
  auto num = [&](const char* key) {
    const auto& v = io::require(ctx, key);
    if (!v.is_number_integer()) throw DomainError(std::string("\"") + key + "\" must be an integer");
    return v.get<std::int64_t>();
  };
  if (kind == "s2") {
    d.s2.emplace(static_cast<std::uint64_t>(num("q")), static_cast<int>(num("t")));
  } else if (kind == "bch") {
    auto b = bch_code(static_cast<std::uint32_t>(num("p")), static_cast<unsigned>(num("m")), static_cast<int>(num("d")));
    d.modp.emplace(b.code, num("kplus"), num("kminus"));
  } else if (kind == "linear") {
    d.modp.emplace(io::code_from_json(io::require(ctx, "code")), num("kplus"), num("kminus"));
  } else {
    throw DomainError("decoder kind must be s2, bch or linear");
  }
  return d;
}

// ---------------------------------------------------------------------------
// table

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) line += (i ? "," : "") + csv_field(fields[i]);
  return line + "\r\n";
}

struct TableParams {
  std::int64_t bc_q = 4, pm_q = 3, sidon_n = 11, cover_p = 2, cover_m = 2, cover_t = 2, lambda_n = 53;
  std::uint64_t seed = 1;
};

std::string verdict_of(const Json& doc, const std::string& kind, int jobs) {
  Json report;
  const int code = verify(kind, load_instance(doc, ""), std::nullopt, jobs, report);
  if (code == disagreement) return "disagreement";
  return report["verdict"].get<std::string>();
}

std::string table(const TableParams& tp, int jobs) {
  std::string csv = csv_row({"family", "type", "t", "kplus", "kminus", "n", "group_order", "density_num",
                             "density_den", "density_decimal", "verdict"});
  auto row = [&](const std::string& family, const std::string& type, const Json& doc, const std::string& verdict) {
    const auto& d = doc["density"];
    const auto& b = d["ball"];
    csv += csv_row({family, type, std::to_string(b["t"].get<int>()), std::to_string(b["kplus"].get<std::int64_t>()),
                    std::to_string(b["kminus"].get<std::int64_t>()), std::to_string(b["n"].get<int>()),
                    d["group_order"].get<std::string>(), d["density_num"].get<std::string>(),
                    d["density_den"].get<std::string>(), d["density_decimal"].get<std::string>(), verdict});
  };

  ConstructParams c;
  c.family = "bch-lattice";
  c.p = 3, c.m = 2, c.d = 5, c.kplus = 1, c.kminus = 1;
  auto doc = construct(c, jobs);
  row(c.family, "packing", doc, verdict_of(doc, "packing", jobs));

  c = ConstructParams{};
  c.family = "bose-chowla-10";
  c.q = tp.bc_q, c.t = 2;
  doc = construct(c, jobs);
  row(c.family, "packing", doc, verdict_of(doc, "packing", jobs));

  c = ConstructParams{};
  c.family = "bose-chowla-11";
  c.q = tp.pm_q, c.t = 2;
  doc = construct(c, jobs);
  row(c.family, "packing", doc, verdict_of(doc, "packing", jobs));

  c = ConstructParams{};
  c.family = "sidon-2fold";
  c.n_mod = tp.sidon_n, c.k = 2, c.size = tp.sidon_n, c.kplus = 2, c.kminus = 0;
  doc = construct(c, jobs);
  row(c.family, "packing", doc, verdict_of(doc, "packing", jobs));

  c = ConstructParams{};
  c.family = "behrend-ruzsa";
  c.kplus = 1, c.kminus = 0, c.dim = 2, c.digits = 1, c.p = 17;
  doc = construct(c, jobs);
  row(c.family, "packing", doc, verdict_of(doc, "packing", jobs));

  c = ConstructParams{};
  c.family = "lambda-random";
  c.n_mod = tp.lambda_n, c.t = 2, c.kplus = 1, c.kminus = 0, c.epsilon = 0.25, c.seed = tp.seed;
  doc = construct(c, jobs);
  row(c.family, "lambda-packing", doc, "lambda=" + std::to_string(doc["lambda"].get<std::uint64_t>()));

  c = ConstructParams{};
  c.family = "covering-product";
  c.p = tp.cover_p, c.m = tp.cover_m, c.t = tp.cover_t, c.kplus = tp.cover_p - 1, c.kminus = 0;
  doc = construct(c, jobs);
  row(c.family, "covering", doc, verdict_of(doc, "covering", jobs));

  // random covering code baseline at the same ball and ell = p^m
  const auto& cb = doc["density"]["ball"];
  BallSpec ball{cb["n"].get<int>(), cb["t"].get<int>(), cb["kplus"].get<std::int64_t>(),
                cb["kminus"].get<std::int64_t>()};
  const auto ell = static_cast<std::int64_t>(ipow(BigInt(tp.cover_p), static_cast<unsigned>(tp.cover_m))
                                                 .convert_to<std::int64_t>());
  auto base = hamming_covering_baseline(ball, ell);
  const BigInt space = ipow(BigInt(ell), ball.n);
  csv += csv_row({"covering-baseline", "covering", std::to_string(ball.t), std::to_string(ball.kplus),
                  std::to_string(ball.kminus), std::to_string(ball.n), to_string(space),
                  to_string(BigInt(base.code_size * ball_size(ball))), to_string(space), io::decimal6(base.density),
                  "n/a"});
  return csv;
}

// ---------------------------------------------------------------------------

struct LimitsGuard {
  Limits saved = limits();
  ~LimitsGuard() { set_limits(saved); }
};

int run_inner(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::string& primary) {
  CLI::App app{"Lattice packings and coverings of Z^n by limited-magnitude error balls"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  int jobs = 0;
  std::string limits_text;
  app.add_option("--jobs", jobs, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--limits", limits_text, "group=N,field=N,enum=N,volume=N,syndromes=N,codewords=N");

  ConstructParams cp;
  auto* construct_cmd = app.add_subcommand("construct", "build a packing, lambda-packing or covering");
  construct_cmd->add_option("--family", cp.family, "construction family")->required();
  construct_cmd->add_option("--p", cp.p, "prime");
  construct_cmd->add_option("--m", cp.m, "extension degree / exponent");
  construct_cmd->add_option("--d", cp.d, "BCH designed distance");
  construct_cmd->add_option("--q", cp.q, "prime power for the Bose-Chowla sets");
  construct_cmd->add_option("--t", cp.t, "number of errors");
  construct_cmd->add_option("--kplus", cp.kplus, "largest increase");
  construct_cmd->add_option("--kminus", cp.kminus, "largest decrease");
  construct_cmd->add_option("--N", cp.n_mod, "cyclic group order");
  construct_cmd->add_option("--k", cp.k, "Sidon fold");
  construct_cmd->add_option("--size", cp.size, "target Sidon set size");
  construct_cmd->add_option("--D", cp.dim, "sphere dimension");
  construct_cmd->add_option("--K", cp.digits, "largest sphere digit");
  construct_cmd->add_option("--epsilon", cp.epsilon, "sampler exponent slack");
  construct_cmd->add_option("--seed", cp.seed, "sampler seed");
  construct_cmd->add_option("--budget", cp.budget, "search node budget");
  construct_cmd->add_option("--set", cp.set, "s1 or s2");
  construct_cmd->add_option("--elements", cp.elements, "explicit B_t set, comma separated (needs --N)");
  construct_cmd->add_option("--out", cp.out, "output file (default stdout)");

  std::string vkind, vin, vball;
  std::optional<std::uint64_t> vlambda;
  auto* verify_cmd = app.add_subcommand("verify", "run the splitting and geometric oracles");
  verify_cmd->add_option("kind", vkind, "packing | covering | lambda")
      ->required()
      ->check(CLI::IsMember({"packing", "covering", "lambda"}));
  verify_cmd->add_option("--in", vin, "construct output, SplitterSet or LatticeBasis JSON")->required();
  verify_cmd->add_option("--ball", vball, "BallSpec JSON text or file (lattices)");
  verify_cmd->add_option("--lambda", vlambda, "claimed multiplicity bound");

  std::string din, dball;
  auto* density_cmd = app.add_subcommand("density", "exact densities of a splitter set or lattice");
  density_cmd->add_option("--in", din, "input JSON")->required();
  density_cmd->add_option("--ball", dball, "BallSpec JSON text or file (lattices)");

  std::string ctx_path, vec_path, dec_out;
  auto* decode_cmd = app.add_subcommand("decode", "decode JSON-lines integer vectors");
  decode_cmd->add_option("--context", ctx_path, "decoder context JSON")->required();
  decode_cmd->add_option("--in", vec_path, "JSON-lines input ('-' = stdin)")->required();
  decode_cmd->add_option("--out", dec_out, "output file (default stdout)");

  TableParams tp;
  std::string table_out;
  auto* table_cmd = app.add_subcommand("table", "desk-scale summary of every family as CSV");
  table_cmd->add_option("--bc-q", tp.bc_q, "q for the {1}-splitter row");
  table_cmd->add_option("--pm-q", tp.pm_q, "q for the {-1,1}-splitter row");
  table_cmd->add_option("--sidon-N", tp.sidon_n, "modulus for the 2-fold Sidon row");
  table_cmd->add_option("--cover-p", tp.cover_p, "prime for the covering rows");
  table_cmd->add_option("--cover-m", tp.cover_m, "exponent for the covering rows");
  table_cmd->add_option("--cover-t", tp.cover_t, "t for the covering rows");
  table_cmd->add_option("--lambda-N", tp.lambda_n, "modulus for the lambda row");
  table_cmd->add_option("--seed", tp.seed, "sampler seed");
  table_cmd->add_option("--out", table_out, "output file (default stdout)");

  std::string skind;
  std::int64_t s_n = 0, s_k = 1, s_t = 2, s_size = 3;
  std::uint64_t s_budget = 10'000'000;
  auto* search_cmd = app.add_subcommand("search", "backtracking search for k-fold Sidon or B_t sets");
  search_cmd->add_option("--kind", skind, "sidon | bt")->required()->check(CLI::IsMember({"sidon", "bt"}));
  search_cmd->add_option("--N", s_n, "modulus")->required();
  search_cmd->add_option("--k", s_k, "Sidon fold");
  search_cmd->add_option("--t", s_t, "B_t strength");
  search_cmd->add_option("--size", s_size, "target size");
  search_cmd->add_option("--budget", s_budget, "node budget");

  std::string manifest_in;
  auto* replay_cmd = app.add_subcommand("replay", "re-run a manifest and compare the output digest");
  replay_cmd->add_option("manifest", manifest_in, "manifest JSON")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ok : usage;
  }

  if (!limits_text.empty()) set_limits(parse_limits(limits_text, limits()));

  if (*construct_cmd) {
    auto doc = construct(cp, jobs);
    emit(doc.dump(2) + "\n", cp.out, out, primary);
    return ok;
  }
  if (*verify_cmd) {
    Json report;
    auto code = verify(vkind, load_instance(read_json(vin), vball), vlambda, jobs, report);
    emit(report.dump(2) + "\n", "", out, primary);
    return code;
  }
  if (*density_cmd) {
    auto in = load_instance(read_json(din), dball);
    Json doc = Json::object();
    if (in.splitter) {
      doc["splitter_density"] = io::density_record(*in.ball, in.splitter->group().order());
      try {
        auto l = kernel_lattice(*in.splitter);
        doc["lattice_density"] = io::density_record(*in.ball, l.volume());
      } catch (const ResourceError& e) {
        doc["lattice_density"] = e.what();
      }
    } else {
      if (in.ball->n != in.lattice->n()) throw DomainError("ball and lattice dimensions differ");
      doc["lattice_density"] = io::density_record(*in.ball, in.lattice->volume());
    }
    emit(doc.dump(2) + "\n", "", out, primary);
    return ok;
  }
  if (*decode_cmd) {
    auto decoder = load_decoder(read_json(ctx_path));
    std::istringstream lines(read_text(vec_path));
    std::string line, text;
    std::size_t lineno = 0;
    while (std::getline(lines, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      Json y;
      try {
        y = Json::parse(line);
      } catch (const Json::parse_error&) {
        throw DomainError("line " + std::to_string(lineno) + " is not JSON");
      }
      if (!y.is_array()) throw DomainError("line " + std::to_string(lineno) + " is not an integer array");
      IntVector v;
      for (const auto& x : y) {
        if (!x.is_number_integer()) throw DomainError("line " + std::to_string(lineno) + " has a non-integer");
        v.push_back(x.get<std::int64_t>());
      }
      auto r = decoder.run(v);
      Json o{{"input", v}, {"status", r.ok() ? "ok" : "fail"}};
      o["decoded"] = r.ok() ? Json(r.decoded) : Json(nullptr);
      if (!r.note.empty()) o["note"] = r.note;
      if (r.beyond_guarantee) o["beyond_guarantee"] = true;
      text += o.dump() + "\n";
    }
    emit(text, dec_out, out, primary);
    return ok;
  }
  if (*table_cmd) {
    emit(table(tp, jobs), table_out, out, primary);
    return ok;
  }
  if (*search_cmd) {
    Json doc;
    bool reached = false;
    if (skind == "sidon") {
      auto r = search_kfold_sidon(s_n, static_cast<int>(s_k), static_cast<int>(s_size), s_budget);
      reached = r.reached;
      doc = Json{{"kind", "sidon"},         {"N", s_n},       {"k", s_k},
                 {"elements", r.best.elements}, {"reached", r.reached}, {"exhaustive", r.exhaustive}};
    } else {
      auto r = search_bt_set(s_n, static_cast<int>(s_t), static_cast<int>(s_size), s_budget);
      reached = r.reached;
      doc = Json{{"kind", "bt"},            {"N", s_n},       {"t", s_t},
                 {"elements", r.best.elements}, {"reached", r.reached}, {"exhaustive", r.exhaustive}};
    }
    emit(doc.dump(2) + "\n", "", out, primary);
    return reached ? ok : refuted;
  }
  if (*replay_cmd) {
    auto m = read_json(manifest_in);
    std::vector<std::string> again;
    for (const auto& a : io::require(m, "arguments")) again.push_back(a.get<std::string>());
    std::ostringstream sink, sink_err;
    std::string replayed;
    const int code = run_inner(again, sink, sink_err, replayed);
    const auto expected = io::require(m, "result_digest").get<std::string>();
    const auto actual = fnv1a_hex(replayed);
    Json doc{{"expected", expected}, {"actual", actual}, {"match", expected == actual}, {"exit_code", code}};
    emit(doc.dump(2) + "\n", "", out, primary);
    return expected == actual ? ok : refuted;
  }
  return usage;
}

}  // namespace

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  // --manifest is handled here so replays never rewrite it
  std::vector<std::string> rest;
  std::string manifest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--manifest" && i + 1 < args.size()) {
      manifest = args[++i];
    } else if (args[i].rfind("--manifest=", 0) == 0) {
      manifest = args[i].substr(11);
    } else {
      rest.push_back(args[i]);
    }
  }

  LimitsGuard guard;
  const auto start = std::chrono::steady_clock::now();
  std::string primary;
  int code = usage;
  try {
    code = run_inner(rest, out, err, primary);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    code = usage;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    code = usage;
  }
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();

  if (!manifest.empty()) {
    Json seed = nullptr;
    for (std::size_t i = 0; i + 1 < rest.size(); ++i)
      if (rest[i] == "--seed") seed = rest[i + 1];
    Json m{{"command", rest.empty() ? "" : rest.front()},
           {"arguments", rest},
           {"seed", seed},
           {"tool_version", kVersion},
           {"elapsed_ms", static_cast<double>(elapsed) / 1000.0},
           {"exit_code", code},
           {"result_digest", fnv1a_hex(primary)}};
    std::ofstream f(manifest, std::ios::binary);
    if (!f) {
      err << "error: cannot write manifest " << manifest << "\n";
      return usage;
    }
    f << m.dump(2) << "\n";
  }
  return code;
}

}  // namespace magball::cli

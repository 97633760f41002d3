#include "rigidity/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rigidity/automorphism.hpp"
#include "rigidity/census.hpp"
#include "rigidity/structure.hpp"
#include "rigidity/structure_io.hpp"
#include "rigidity/theory.hpp"

namespace rigidity {

namespace {

using nlohmann::ordered_json;

// Renders a double exactly the way the JSON output does, so the human and
// CSV views stay byte-stable too.
std::string num_str(double v) { return nlohmann::json(v).dump(); }

std::vector<int> parse_arities_csv(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty entry in --arities");
    out.push_back(std::stoi(item));
  }
  if (out.empty()) throw std::invalid_argument("--arities needs at least one arity");
  return out;
}

struct VocabOpts {
  std::string arities_csv;
  std::string cls = "all";
  std::string vocab_file;

  bool given() const { return !arities_csv.empty() || !vocab_file.empty(); }

  Vocabulary resolve() const {
    if (!vocab_file.empty()) {
      std::ifstream in(vocab_file);
      if (!in) throw std::invalid_argument("cannot open vocab file " + vocab_file);
      std::stringstream buf;
      buf << in.rdbuf();
      return Vocabulary::from_json_string(buf.str());
    }
    if (arities_csv.empty())
      throw std::invalid_argument("a vocabulary is required: --arities or --vocab-file");
    return Vocabulary::make(parse_arities_csv(arities_csv),
                            structure_class_from_string(cls));
  }
};

void add_vocab_flags(CLI::App* cmd, VocabOpts& vo) {
  cmd->add_option("--arities", vo.arities_csv, "comma-separated symbol arities, e.g. 2 or 2,2");
  cmd->add_option("--class", vo.cls, "structure class: all, irreflexive, irreflexive-symmetric")
      ->default_val("all");
  cmd->add_option("--vocab-file", vo.vocab_file,
                  "JSON vocabulary file {\"arities\":[..],\"class\":\"..\"}");
}

// Writes `doc` to `path`, or to stdout when path is empty.
void write_doc(const std::string& doc, const std::string& path) {
  if (path.empty()) {
    std::fwrite(doc.data(), 1, doc.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(doc.data(), static_cast<std::streamsize>(doc.size()));
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

// Output convention shared by the table-producing subcommands: stdout shows
// the --format rendering (human table by default); --out always receives the
// machine document (JSON, or CSV when --format csv was chosen).
void emit(const std::string& format, const std::string& out_path, const std::string& json_doc,
          const std::string& csv_doc, const std::string& human_doc) {
  if (!out_path.empty()) write_doc(format == "csv" ? csv_doc : json_doc, out_path);
  if (format == "json")
    write_doc(json_doc, "");
  else if (format == "csv")
    write_doc(csv_doc, "");
  else if (out_path.empty())
    write_doc(human_doc, "");
  else
    std::cout << "wrote " << out_path << "\n";
}

// ---------------------------------------------------------------------------
// Structure input (hex encoding or RSTR file)

struct StructIn {
  std::string enc;
  std::string rstr;
  int n = 0;
};

Structure load_structure(const VocabOpts& vo, const StructIn& si) {
  if (!si.enc.empty() && !si.rstr.empty())
    throw std::invalid_argument("give either a hex encoding or an RSTR file, not both");
  if (!si.rstr.empty()) {
    if (!vo.vocab_file.empty()) {
      Vocabulary v = vo.resolve();
      Structure s = read_rstr_file(si.rstr, v.cls);
      if (!(s.vocab() == v))
        throw std::invalid_argument(si.rstr + " does not match the requested vocabulary");
      return s;
    }
    Structure s = read_rstr_file(si.rstr, structure_class_from_string(vo.cls));
    if (!vo.arities_csv.empty() && parse_arities_csv(vo.arities_csv) != s.vocab().arities)
      throw std::invalid_argument(si.rstr + " does not match the requested arities");
    return s;
  }
  if (si.enc.empty()) throw std::invalid_argument("a structure is required: --enc or --rstr");
  if (si.n < 1) throw std::invalid_argument("--n is required with --enc");
  Vocabulary v = vo.resolve();
  SlotLayout lay = SlotLayout::build(v, si.n);
  StructureEncoding se = StructureEncoding::from_hex(si.enc, lay.total_bits());
  return decode_structure(lay, se.bits);
}

// ---------------------------------------------------------------------------
// census / sample

struct CensusOpts {
  VocabOpts vocab;
  int n = 0;
  int threads = 1;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "human";
  std::string checkpoint;
  bool verify_laws = false;
};

std::string census_human(const CensusReport& rep) {
  std::ostringstream o;
  o << "vocab: arities=[";
  for (std::size_t i = 0; i < rep.vocab.arities.size(); ++i)
    o << (i ? "," : "") << rep.vocab.arities[i];
  o << "] class=" << to_string(rep.vocab.cls) << "\n";
  o << "n: " << rep.n << "\n";
  o << "mode: " << (rep.mode.exhaustive ? "exhaustive" : "sampled") << "\n";
  if (!rep.mode.exhaustive)
    o << "samples: " << rep.mode.samples << "  seed: " << rep.mode.seed << "\n";
  o << "total: " << rep.counters.total << "\n\n";
  char line[160];
  std::snprintf(line, sizeof line, "%4s %5s  %-24s %3s %4s  %12s\n", "spt", "spt*", "class", "q",
                "s", "count");
  o << line;
  for (const auto& [k, v] : rep.counters.labelled) {
    std::snprintf(line, sizeof line, "%4d %5d  %-24s %3d %4d  %12llu\n", k.spt, k.spt_star,
                  k.cls.to_string().c_str(), k.q, k.s,
                  static_cast<unsigned long long>(v));
    o << line;
  }
  if (rep.counters.unlabelled) {
    o << "\nunlabelled total: " << rep.counters.unlabelled_total() << "\n";
    std::snprintf(line, sizeof line, "%4s %5s  %-24s %3s %4s  %12s\n", "spt", "spt*", "class",
                  "q", "s", "count");
    o << line;
    for (const auto& [k, v] : *rep.counters.unlabelled) {
      std::snprintf(line, sizeof line, "%4d %5d  %-24s %3d %4d  %12llu\n", k.spt, k.spt_star,
                    k.cls.to_string().c_str(), k.q, k.s,
                    static_cast<unsigned long long>(v));
      o << line;
    }
  }
  return o.str();
}

int run_census_cmd(const CensusOpts& o, bool sampled, bool verbose) {
  Vocabulary v = o.vocab.resolve();
  CensusMode mode =
      sampled ? CensusMode::sampled(o.samples, o.seed) : CensusMode::exhaustive_mode();
  CensusReport rep = run_census(v, o.n, mode, o.threads, o.checkpoint, o.verify_laws);
  if (verbose) std::fprintf(stderr, "elapsed: %.2fs\n", rep.elapsed_seconds);

  std::string human = census_human(rep);
  if (o.verify_laws) {
    human += "\nlaw violations: " + std::to_string(rep.counters.law_violations) + "\n";
  }
  emit(o.format, o.out, rep.to_json_string(), rep.to_csv(), human);
  if (o.verify_laws && rep.counters.law_violations > 0) {
    std::cerr << "error: " << rep.counters.law_violations << " law violations\n";
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// trend

int run_trend_cmd(const std::vector<std::string>& report_paths, const std::string& num_text,
                  const std::string& den_text, const std::string& format,
                  const std::string& out_path) {
  std::vector<CensusReport> reports;
  for (const std::string& p : report_paths) {
    std::ifstream in(p);
    if (!in) throw std::invalid_argument("cannot open report " + p);
    std::stringstream buf;
    buf << in.rdbuf();
    reports.push_back(CensusReport::from_json_string(buf.str()));
  }
  KeyPredicate num = KeyPredicate::parse(num_text);
  KeyPredicate den = KeyPredicate::parse(den_text);
  std::vector<RatioRow> rows = ratio_table(reports, num, den);

  bool sampled = !reports.empty() && !reports[0].mode.exhaustive;
  ordered_json arr = ordered_json::array();
  for (const RatioRow& r : rows) {
    ordered_json e;
    e["n"] = r.n;
    e["num"] = r.num;
    e["den"] = r.den;
    if (r.fraction)
      e["fraction"] = *r.fraction;
    else
      e["fraction"] = nullptr;
    if (r.standard_error) e["standard_error"] = *r.standard_error;
    arr.push_back(std::move(e));
  }
  ordered_json j;
  j["num"] = num_text;
  j["den"] = den_text;
  j["rows"] = std::move(arr);
  std::string json_doc = j.dump(2) + "\n";

  std::string csv_doc = sampled ? "n,num,den,fraction,standard_error\n" : "n,num,den,fraction\n";
  for (const RatioRow& r : rows) {
    csv_doc += std::to_string(r.n) + "," + std::to_string(r.num) + "," + std::to_string(r.den) +
               "," + (r.fraction ? num_str(*r.fraction) : std::string("undefined"));
    if (sampled) csv_doc += "," + (r.standard_error ? num_str(*r.standard_error) : std::string());
    csv_doc += "\n";
  }

  std::ostringstream h;
  h << "num: " << num_text << "\nden: " << den_text << "\n\n";
  char line[160];
  std::snprintf(line, sizeof line, "%3s %12s %12s  %-22s %s\n", "n", "num", "den", "fraction",
                sampled ? "stderr" : "");
  h << line;
  for (const RatioRow& r : rows) {
    std::string frac = r.fraction ? num_str(*r.fraction) : std::string("undefined");
    std::string se = r.standard_error ? num_str(*r.standard_error) : std::string();
    std::snprintf(line, sizeof line, "%3d %12llu %12llu  %-22s %s\n", r.n,
                  static_cast<unsigned long long>(r.num),
                  static_cast<unsigned long long>(r.den), frac.c_str(), se.c_str());
    h << line;
  }

  emit(format, out_path, json_doc, csv_doc, h.str());
  return 0;
}

// ---------------------------------------------------------------------------
// aut

int run_aut_cmd(const VocabOpts& vo, const StructIn& si, const std::string& format,
                const std::string& out_path) {
  Structure m = load_structure(vo, si);
  AutProfile p = profile(m);

  ordered_json j;
  j["aut_order"] = p.group.order();
  ordered_json gens = ordered_json::array();
  for (const Permutation& g : p.group.generators())
    if (!g.is_identity()) gens.push_back(g.cycle_string());
  j["generators"] = std::move(gens);
  j["spt"] = p.spt;
  j["spt_star"] = p.spt_star;
  j["class"] = p.cls.to_string();
  j["q"] = p.stats.q;
  j["s"] = p.stats.s;
  std::string json_doc = j.dump(2) + "\n";

  std::ostringstream h;
  h << "aut order: " << p.group.order() << "\n";
  h << "generators:";
  bool any = false;
  for (const Permutation& g : p.group.generators())
    if (!g.is_identity()) {
      h << " " << g.cycle_string();
      any = true;
    }
  if (!any) h << " (none)";
  h << "\n";
  h << "spt: " << p.spt << "\n";
  h << "spt*: " << p.spt_star << "\n";
  h << "class: " << p.cls.to_string() << "\n";
  h << "q: " << p.stats.q << "\ns: " << p.stats.s << "\n";

  emit(format, out_path, json_doc, json_doc, h.str());
  return 0;
}

// ---------------------------------------------------------------------------
// beta / beta-gap / predict

int run_beta_cmd(long long x, long long y, long long z, long long k, long long l, long long r,
                 const std::string& format, const std::string& out_path) {
  BetaParams params = BetaParams::make(k, l, r);
  long long value = beta(x, y, z, params);
  ordered_json j{{"x", x}, {"y", y}, {"z", z}, {"k", k}, {"l", l}, {"r", r}, {"value", value}};
  std::string json_doc = ordered_json(j).dump(2) + "\n";
  std::ostringstream h;
  h << "beta(" << x << ", " << y << ", " << z << ") = " << value << "  [k=" << k << " l=" << l
    << " r=" << r << "]\n";
  emit(format, out_path, json_doc, json_doc, h.str());
  return 0;
}

int run_beta_gap_cmd(long long i, long long k, long long l, long long r,
                     const std::string& format, const std::string& out_path) {
  BetaGap g = beta_gap(i, BetaParams::make(k, l, r));
  ordered_json j{{"i", i},        {"k", k},
                 {"l", l},        {"r", r},
                 {"gap", g.gap},  {"expected", g.expected},
                 {"check", g.check}};
  std::string json_doc = ordered_json(j).dump(2) + "\n";
  std::ostringstream h;
  h << "gap = " << g.gap << "\nexpected = " << g.expected
    << "\ncheck = " << (g.check ? "pass" : "FAIL") << "\n";
  emit(format, out_path, json_doc, json_doc, h.str());
  return g.check ? 0 : 1;
}

int run_predict_cmd(int m, int r, const std::string& format, const std::string& out_path) {
  Prediction p = predict(m, r);
  ordered_json j;
  j["m"] = p.m;
  j["r"] = r;
  j["m_prime"] = p.m_prime;
  ordered_json cls = ordered_json::array();
  for (const GroupClass& c : p.classes) cls.push_back(c.to_string());
  j["classes"] = std::move(cls);
  std::string json_doc = j.dump(2) + "\n";
  std::ostringstream h;
  h << "m' = " << p.m_prime << "\nclasses:";
  for (const GroupClass& c : p.classes) h << " " << c.to_string();
  h << "\n";
  emit(format, out_path, json_doc, json_doc, h.str());
  return 0;
}

// ---------------------------------------------------------------------------
// verify-lemmas

int run_verify_lemmas_cmd(int max_degree, const std::string& format,
                          const std::string& out_path) {
  std::vector<LemmaCheck> checks = verify_lemma_suite(max_degree);
  ordered_json arr = ordered_json::array();
  bool all_pass = true;
  for (const LemmaCheck& c : checks) {
    ordered_json e;
    e["check"] = c.check;
    e["scope"] = c.scope;
    e["pass"] = c.pass;
    if (c.counterexample.empty())
      e["counterexample"] = nullptr;
    else
      e["counterexample"] = c.counterexample;
    arr.push_back(std::move(e));
    all_pass = all_pass && c.pass;
  }
  std::string json_doc = arr.dump(2) + "\n";

  std::ostringstream h;
  int npass = 0;
  for (const LemmaCheck& c : checks) {
    h << (c.pass ? "pass  " : "FAIL  ") << c.check << "  (" << c.scope << ")";
    if (!c.pass) h << "  counterexample: " << c.counterexample;
    h << "\n";
    npass += c.pass ? 1 : 0;
  }
  h << (all_pass ? "all checks passed" : "CHECKS FAILED") << " (" << npass << "/"
    << checks.size() << ")\n";

  emit(format, out_path, json_doc, json_doc, h.str());
  return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// membership

int run_membership_cmd(const VocabOpts& vo, const StructIn& a_in, const StructIn& m_in,
                       const std::vector<std::string>& h_gens, const std::string& format,
                       const std::string& out_path) {
  Structure A = load_structure(vo, a_in);
  Structure M = load_structure(vo, m_in);
  if (!(A.vocab() == M.vocab()))
    throw std::invalid_argument("pattern and target structures must share one vocabulary");
  if (h_gens.empty()) throw std::invalid_argument("--h-gens is required");
  std::vector<Permutation> gens;
  for (const std::string& g : h_gens) gens.push_back(Permutation::from_cycle_string(g, A.n()));
  PermGroup H = PermGroup::close(std::move(gens));

  MembershipResult res = membership_S(A, H, M);
  bool full = res.member ? is_full(A, H, M) : false;

  ordered_json j;
  j["member"] = res.member;
  if (res.witness) {
    ordered_json w = ordered_json::array();
    for (int x : *res.witness) w.push_back(x + 1);  // 1-based point labels, as in cycle strings
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  if (res.member) j["full"] = full;
  std::string json_doc = j.dump(2) + "\n";

  std::ostringstream h;
  h << "member: " << (res.member ? "true" : "false") << "\n";
  if (res.witness) {
    h << "witness:";
    for (int x : *res.witness) h << " " << (x + 1);
    h << "\n";
  }
  if (res.member) h << "full: " << (full ? "true" : "false") << "\n";

  emit(format, out_path, json_doc, json_doc, h.str());
  return 0;
}

void add_format_out(CLI::App* cmd, std::string& format, std::string& out, bool with_csv) {
  std::vector<std::string> choices = with_csv
                                         ? std::vector<std::string>{"human", "json", "csv"}
                                         : std::vector<std::string>{"human", "json"};
  cmd->add_option("--format", format, "output format")
      ->default_val("human")
      ->check(CLI::IsMember(choices));
  cmd->add_option("--out", out, "also write the machine document to this file");
}

}  // namespace

int dispatch(int argc, char** argv) {
  CLI::App app{"relational-structure rigidity toolkit: censuses, automorphism profiles, "
               "growth-polynomial checks"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "progress notes on stderr");

  CensusOpts census_opts;
  CLI::App* census_cmd = app.add_subcommand("census", "exhaustive census of all structures");
  add_vocab_flags(census_cmd, census_opts.vocab);
  census_cmd->add_option("--n", census_opts.n, "universe size")->required();
  census_cmd->add_option("--threads", census_opts.threads, "worker threads")
      ->default_val(1)
      ->envname("RIGIDITY_THREADS");
  census_cmd->add_option("--checkpoint", census_opts.checkpoint,
                         "checkpoint file (resumed when present)");
  census_cmd->add_flag("--verify-laws", census_opts.verify_laws,
                       "check the exact support laws per structure; exit 1 on any violation");
  add_format_out(census_cmd, census_opts.format, census_opts.out, true);

  CensusOpts sample_opts;
  CLI::App* sample_cmd = app.add_subcommand("sample", "sampled census of random structures");
  add_vocab_flags(sample_cmd, sample_opts.vocab);
  sample_cmd->add_option("--n", sample_opts.n, "universe size")->required();
  sample_cmd->add_option("--samples", sample_opts.samples, "number of samples")->required();
  sample_cmd->add_option("--seed", sample_opts.seed, "RNG seed")->default_val(0);
  sample_cmd->add_option("--threads", sample_opts.threads, "worker threads")
      ->default_val(1)
      ->envname("RIGIDITY_THREADS");
  sample_cmd->add_option("--checkpoint", sample_opts.checkpoint,
                         "checkpoint file (resumed when present)");
  sample_cmd->add_flag("--verify-laws", sample_opts.verify_laws,
                       "check the exact support laws per structure; exit 1 on any violation");
  add_format_out(sample_cmd, sample_opts.format, sample_opts.out, true);

  std::vector<std::string> trend_reports;
  std::string trend_num, trend_den, trend_format, trend_out;
  CLI::App* trend_cmd = app.add_subcommand("trend", "ratio table across census reports");
  trend_cmd->add_option("--reports", trend_reports, "comma-separated report JSON files")
      ->required()
      ->delimiter(',');
  trend_cmd->add_option("--num", trend_num, "numerator key predicate, e.g. spt*=3")->required();
  trend_cmd->add_option("--den", trend_den, "denominator key predicate")->required();
  add_format_out(trend_cmd, trend_format, trend_out, true);

  VocabOpts aut_vocab;
  StructIn aut_in;
  std::string aut_format, aut_out;
  CLI::App* aut_cmd = app.add_subcommand("aut", "automorphism profile of one structure");
  add_vocab_flags(aut_cmd, aut_vocab);
  aut_cmd->add_option("--n", aut_in.n, "universe size (with --enc)");
  aut_cmd->add_option("--enc", aut_in.enc, "hex structure encoding");
  aut_cmd->add_option("--rstr", aut_in.rstr, "RSTR structure file");
  add_format_out(aut_cmd, aut_format, aut_out, false);

  long long beta_x = 0, beta_y = 0, beta_z = 0;
  long long beta_k = 1, beta_l = 0, beta_r = 2;
  std::string beta_format, beta_out;
  CLI::App* beta_cmd = app.add_subcommand("beta", "evaluate the growth polynomial");
  beta_cmd->add_option("--x", beta_x)->required();
  beta_cmd->add_option("--y", beta_y)->required();
  beta_cmd->add_option("--z", beta_z)->required();
  beta_cmd->add_option("--k", beta_k, "count of maximal-arity symbols")->default_val(1);
  beta_cmd->add_option("--l", beta_l, "count of next-arity symbols")->default_val(0);
  beta_cmd->add_option("--r", beta_r, "maximal arity")->default_val(2);
  add_format_out(beta_cmd, beta_format, beta_out, false);

  long long gap_i = 1, gap_k = 1, gap_l = 0, gap_r = 3;
  std::string gap_format, gap_out;
  CLI::App* gap_cmd =
      app.add_subcommand("beta-gap", "consecutive-level gap of the growth polynomial");
  gap_cmd->add_option("--i", gap_i)->required();
  gap_cmd->add_option("--k", gap_k)->default_val(1);
  gap_cmd->add_option("--l", gap_l)->default_val(0);
  gap_cmd->add_option("--r", gap_r)->default_val(3);
  add_format_out(gap_cmd, gap_format, gap_out, false);

  int predict_m = 2, predict_r = 2;
  std::string predict_format, predict_out;
  CLI::App* predict_cmd =
      app.add_subcommand("predict", "support size and class list for a support threshold");
  predict_cmd->add_option("--m", predict_m, "support threshold >= 2")->required();
  predict_cmd->add_option("--r", predict_r, "maximal arity >= 2")->default_val(2);
  add_format_out(predict_cmd, predict_format, predict_out, false);

  int lemmas_degree = 6;
  std::string lemmas_format, lemmas_out;
  CLI::App* lemmas_cmd =
      app.add_subcommand("verify-lemmas", "exhaustive small-degree group-law checks");
  lemmas_cmd->add_option("--max-degree", lemmas_degree, "largest symmetric group degree (3..6)")
      ->default_val(6);
  add_format_out(lemmas_cmd, lemmas_format, lemmas_out, false);

  VocabOpts mem_vocab;
  StructIn mem_a, mem_m;
  std::vector<std::string> mem_h;
  std::string mem_format, mem_out;
  CLI::App* mem_cmd =
      app.add_subcommand("membership", "pattern-family membership and fullness of a structure");
  add_vocab_flags(mem_cmd, mem_vocab);
  mem_cmd->add_option("--a-enc", mem_a.enc, "pattern structure hex encoding");
  mem_cmd->add_option("--a-rstr", mem_a.rstr, "pattern structure RSTR file");
  mem_cmd->add_option("--a-n", mem_a.n, "pattern universe size (with --a-enc)");
  mem_cmd->add_option("--m-enc", mem_m.enc, "target structure hex encoding");
  mem_cmd->add_option("--m-rstr", mem_m.rstr, "target structure RSTR file");
  mem_cmd->add_option("--m-n", mem_m.n, "target universe size (with --m-enc)");
  mem_cmd->add_option("--h-gens", mem_h,
                      "comma-separated generators of H as 1-based cycle strings, e.g. \"(1 2)\"")
      ->required()
      ->delimiter(',');
  add_format_out(mem_cmd, mem_format, mem_out, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (census_cmd->parsed()) return run_census_cmd(census_opts, false, verbose);
    if (sample_cmd->parsed()) return run_census_cmd(sample_opts, true, verbose);
    if (trend_cmd->parsed())
      return run_trend_cmd(trend_reports, trend_num, trend_den, trend_format, trend_out);
    if (aut_cmd->parsed()) return run_aut_cmd(aut_vocab, aut_in, aut_format, aut_out);
    if (beta_cmd->parsed())
      return run_beta_cmd(beta_x, beta_y, beta_z, beta_k, beta_l, beta_r, beta_format, beta_out);
    if (gap_cmd->parsed()) return run_beta_gap_cmd(gap_i, gap_k, gap_l, gap_r, gap_format, gap_out);
    if (predict_cmd->parsed())
      return run_predict_cmd(predict_m, predict_r, predict_format, predict_out);
    if (lemmas_cmd->parsed())
      return run_verify_lemmas_cmd(lemmas_degree, lemmas_format, lemmas_out);
    if (mem_cmd->parsed())
      return run_membership_cmd(mem_vocab, mem_a, mem_m, mem_h, mem_format, mem_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cerr << "error: no subcommand\n";
  return 2;
}

}  // namespace rigidity

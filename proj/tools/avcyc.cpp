// avcyc: validate Weil polynomials, classify isogeny classes by cyclicity,
// convert between matrices and ideals, sweep small q.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "avcyc/cyclicity.hpp"
#include "avcyc/lmfdb_ingest.hpp"

using namespace avcyc;
using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::Parse:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NotPrime:
    case ErrorCode::NonMonic:
    case ErrorCode::WrongDegree:
    case ErrorCode::NotPrimePower:
    case ErrorCode::Io:
      return kExitUsage;
    case ErrorCode::Internal:
      return kExitInternal;
    default:
      return kExitNegative;
  }
}

std::string s(const Int& x) { return to_string(x); }
std::string s(const Rat& x) { return to_string(x); }
std::string s(std::size_t x) { return std::to_string(x); }

Json ints(const std::vector<Int>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(s(x));
  return a;
}

Json matrix_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(ints(m.row(i)));
  return a;
}

Json ideal_json(const IdealLattice& a) {
  Json basis = Json::array();
  RatMatrix b = a.basis_matrix();
  for (std::size_t i = 0; i < b.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < b.cols(); ++j) row.push_back(s(b(i, j)));
    basis.push_back(row);
  }
  return Json{{"denominator", s(a.denominator())}, {"hnf", matrix_json(a.hnf())}, {"basis", basis}};
}

std::vector<Int> parse_int_list(const std::string& text) {
  std::vector<Int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(item));
  if (out.empty()) throw Error(ErrorCode::Parse, "empty integer list");
  return out;
}

// "a,b;c,d" or a flat list with --dim
IntMatrix parse_matrix(const std::string& text, std::size_t dim) {
  std::vector<std::vector<Int>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) rows.push_back(parse_int_list(row));
  if (rows.size() == 1 && dim > 1) {
    if (rows[0].size() != dim * dim) throw Error(ErrorCode::Parse, "matrix needs dim^2 entries");
    std::vector<std::vector<Int>> split(dim);
    for (std::size_t i = 0; i < dim * dim; ++i) split[i / dim].push_back(rows[0][i]);
    rows = split;
  }
  IntMatrix m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw Error(ErrorCode::Parse, "matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RatMatrix parse_rat_rows(const std::string& text) {
  std::vector<std::vector<Rat>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    std::vector<Rat> r;
    std::stringstream rs(row);
    std::string item;
    while (std::getline(rs, item, ',')) r.push_back(parse_rat(item));
    rows.push_back(r);
  }
  if (rows.empty() || rows[0].empty()) throw Error(ErrorCode::Parse, "empty basis");
  RatMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw Error(ErrorCode::Parse, "ragged basis rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Json context_json(const WeilContext& ctx) {
  return Json{{"p", s(ctx.p)},  {"r", s(static_cast<std::size_t>(ctx.r))}, {"q", s(ctx.q)},
              {"g", s(static_cast<std::size_t>(ctx.g))}, {"f", ints(ctx.coefficients_high_first())},
              {"point_count", s(ctx.point_count())}};
}

void emit(const Json& j, const std::string& out) {
  std::string text = j.dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(out, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::Io, "cannot write " + out);
    f << text;
  }
}

Json error_json(const Error& e) {
  return Json{{"schema_version", "1"}, {"error", error_code_name(e.code())}, {"message", e.what()}};
}

struct ContextArgs {
  long p = 0;
  unsigned r = 1;
  unsigned g = 1;
  std::string poly;

  void add_to(CLI::App* sub, bool with_poly) {
    sub->add_option("--p", p, "characteristic")->required();
    sub->add_option("--r", r, "q = p^r")->default_val(1);
    sub->add_option("--g", g, "dimension")->default_val(1);
    if (with_poly) sub->add_option("--poly", poly, "Weil polynomial, monic first, comma separated")->required();
  }
  WeilContext context() const { return make_context(p, r, g, parse_int_list(poly)); }
};

// ---- validate -------------------------------------------------------------

int cmd_validate(const ContextArgs& a) {
  WeilContext ctx = a.context();
  Json j{{"schema_version", "1"}, {"context", context_json(ctx)}, {"is_weil", ctx.is_weil}};
  if (!ctx.is_weil) j["weil_reason"] = ctx.weil_reason;
  j["is_ordinary"] = ctx.is_ordinary;
  j["is_irreducible"] = ctx.is_irreducible;
  std::string why = refusal_reason(ctx);
  j["classifiable"] = why.empty();
  if (!why.empty()) j["reason"] = why;
  emit(j, "");
  return why.empty() ? kExitOk : kExitNegative;
}

// ---- classify -------------------------------------------------------------

Json report_document(const Classification& c, std::optional<double> seconds) {
  Json classes = Json::array();
  for (std::size_t i = 0; i < c.reports.size(); ++i) {
    const auto& r = c.reports[i];
    const auto& cls = c.icm.classes[i];
    classes.push_back(Json{
        {"index", s(r.index)},
        {"matrix", matrix_json(r.class_ref.rep)},
        {"ideal", ideal_json(cls.rep)},
        {"multiplicator_ring_index", s(lattice_index(c.icm.order.lattice, cls.multiplicator_ring.lattice))},
        {"tau_M", s(r.tau_m)},
        {"tau_one_minus_M", s(r.tau_one_minus_m)},
        {"gcd_with_point_count", s(r.gcd_with_point_count)},
        {"in_m_f_1", r.in_m_f_1},
        {"in_m_f_2", r.in_m_f_2},
        {"q_stable", r.q_stable},
        {"invariant_factors", ints(r.invariant_factors)},
        {"group", group_descriptor(r.group)},
        {"verdict", to_string(r.verdict)},
        {"oracle_agrees", r.oracle_agrees},
    });
  }
  Json sigma = Json::array();
  for (const auto& sc : c.sigma_checks) {
    Json by_sigma = Json::array(), by_tau = Json::array();
    for (auto i : sc.by_sigma) by_sigma.push_back(s(i));
    for (auto i : sc.by_tau) by_tau.push_back(s(i));
    sigma.push_back(Json{{"ell", s(sc.ell)}, {"by_sigma", by_sigma}, {"by_tau", by_tau}, {"agrees", sc.agrees}});
  }
  Json indeterminate = Json::array();
  for (const auto& p : c.icm.indeterminate)
    indeterminate.push_back(Json{{"class", s(p.class_index)}, {"candidate", ideal_json(p.candidate)}, {"note", p.note}});
  const auto& sm = c.summary;
  Json doc{{"schema_version", "1"},
           {"context", context_json(c.ctx)},
           {"index_bound", s(c.icm.index_bound)},
           {"certified_bound", s(c.icm.certified_bound)},
           {"minkowski_bound", s(c.icm.minkowski_bound)},
           {"classes", classes},
           {"sigma_checks", sigma},
           {"indeterminate", indeterminate},
           {"summary", Json{{"classes", s(sm.total)},
                            {"cyclic", s(sm.cyclic)},
                            {"not_cyclic", s(sm.not_cyclic)},
                            {"oracle_disagreements", s(sm.oracle_disagreements)},
                            {"zero_cofactor_cases", s(sm.zero_cofactor_cases)},
                            {"sigma_agrees", sm.sigma_agrees}}},
           {"completeness", to_string(sm.completeness)}};
  if (seconds) {
    std::ostringstream t;
    t.setf(std::ios::fixed);
    t.precision(3);
    t << *seconds;
    doc["timing"] = Json{{"seconds", t.str()}, {"kernel", c.icm.stats.kernel}};
  }
  return doc;
}

struct ClassifyArgs {
  std::string index_bound;
  bool no_timing = false;
};

std::optional<Int> bound_of(const ClassifyArgs& a) {
  if (a.index_bound.empty()) return std::nullopt;
  return parse_int(a.index_bound);
}

Classification timed_classify(const WeilContext& ctx, const ClassifyArgs& a, double& seconds) {
  auto t0 = std::chrono::steady_clock::now();
  Classification c = classify_isogeny_class(ctx, bound_of(a));
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

int cmd_classify(const ContextArgs& ca, const ClassifyArgs& a, const std::string& out) {
  WeilContext ctx = ca.context();
  std::string why = refusal_reason(ctx);
  if (!why.empty()) {
    emit(Json{{"schema_version", "1"}, {"context", context_json(ctx)}, {"refused", true}, {"reason", why}}, out);
    std::cerr << "refused: " << why << "\n";
    return kExitNegative;
  }
  double secs = 0;
  Classification c = timed_classify(ctx, a, secs);
  emit(report_document(c, a.no_timing ? std::nullopt : std::optional<double>(secs)), out);
  if (!c.consistent()) {
    std::cerr << "internal consistency failure: oracle or sigma routes disagree\n";
    return kExitInternal;
  }
  return kExitOk;
}

// ---- convert --------------------------------------------------------------

int cmd_convert(const ContextArgs& ca, const std::string& matrix, const std::string& ideal, std::size_t dim) {
  WeilContext ctx = ca.context();
  if (!ctx.is_irreducible) throw Error(ErrorCode::Refusal, "not irreducible");
  FieldPtr field = make_field(ctx);
  Json j{{"schema_version", "1"}, {"context", context_json(ctx)}};
  if (!matrix.empty()) {
    IntMatrix m = parse_matrix(matrix, dim ? dim : 2 * ctx.g);
    IdealLattice a = matrix_to_ideal(field, m);
    IntMatrix back = ideal_to_matrix(a).rep;
    ConjugacyResult cr = matrices_conjugate(field, m, back);
    j["direction"] = "matrix_to_ideal";
    j["input"] = matrix_json(m);
    j["ideal"] = ideal_json(a);
    j["round_trip"] = Json{{"matrix", matrix_json(back)}, {"status", to_string(cr.status)}};
    if (cr.u) j["round_trip"]["u"] = matrix_json(*cr.u);
    emit(j, "");
    return cr.status == Conjugacy::conjugate ? kExitOk : kExitInternal;
  }
  IdealLattice a = IdealLattice::from_rows(field, parse_rat_rows(ideal));
  MatrixClass mc = ideal_to_matrix(a);
  IdealLattice back = matrix_to_ideal(field, mc.rep);
  EquivalenceResult eq = ideal_equivalent(a, back);
  j["direction"] = "ideal_to_matrix";
  j["input"] = ideal_json(a);
  j["matrix"] = matrix_json(mc.rep);
  j["round_trip"] = Json{{"ideal", ideal_json(back)}, {"status", to_string(eq.status)}};
  if (eq.witness) {
    Json w = Json::array();
    for (const auto& c : eq.witness->coeffs()) w.push_back(s(c));
    j["round_trip"]["witness"] = w;
  }
  emit(j, "");
  if (eq.status == Equivalence::equivalent) return kExitOk;
  return eq.status == Equivalence::indeterminate ? kExitNegative : kExitInternal;
}

// ---- sweep ----------------------------------------------------------------

std::string poly_slug(const WeilContext& ctx) {
  std::string out;
  for (const auto& c : ctx.coefficients_high_first()) out += (out.empty() ? "" : "_") + s(c);
  std::replace(out.begin(), out.end(), '-', 'm');
  return out;
}

struct SweepArgs {
  std::string out_dir;
  std::string fixtures;
  bool fetch = false;
  std::string endpoint;
  std::string config;
  unsigned jobs = 0;
};

struct SweepRow {
  WeilContext ctx;
  std::optional<Classification> result;
  double seconds = 0;
  std::string error;
  bool internal = false;
};

ingest::RemoteConfig remote_config(const SweepArgs& a) {
  ingest::RemoteConfig cfg = ingest::remote_config_from_env();
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw Error(ErrorCode::Io, "cannot read " + a.config);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::Parse, "config: malformed JSON at byte " + std::to_string(e.byte));
    }
    if (j.contains("endpoint")) cfg.endpoint = j["endpoint"].get<std::string>();
    if (j.contains("cache_dir")) cfg.cache_dir = j["cache_dir"].get<std::string>();
  }
  if (!a.endpoint.empty()) cfg.endpoint = a.endpoint;
  cfg.network_enabled = a.fetch;
  return cfg;
}

Json cross_validation_json(const std::string& source, const ingest::CrossValidation& cv,
                           const std::vector<ingest::RejectedLine>& rejected) {
  Json j = Json::parse(cv.to_json());
  j["source"] = source;
  Json rej = Json::array();
  for (const auto& r : rejected) rej.push_back(Json{{"line", s(r.line)}, {"message", r.message}});
  j["rejected_lines"] = rej;
  return j;
}

int cmd_sweep(const ContextArgs& ca, const ClassifyArgs& a, const SweepArgs& sa) {
  if (ca.g > 2) throw Error(ErrorCode::Capability, "sweep supports g <= 2");
  Int q = pow(Int(ca.p), ca.r);
  if (q > kDefaultQCap) throw Error(ErrorCode::Capability, "sweep supports q <= " + std::to_string(kDefaultQCap));
  if (!is_prime(ca.p)) throw Error(ErrorCode::NotPrime, std::to_string(ca.p) + " is not prime");
  auto contexts = enumerate_weil_contexts(ca.p, ca.r, ca.g, {true, true});

  std::vector<SweepRow> rows(contexts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < rows.size();) {
      rows[i].ctx = contexts[i];
      try {
        rows[i].result = timed_classify(contexts[i], a, rows[i].seconds);
      } catch (const Error& e) {
        rows[i].error = e.what();
        rows[i].internal = e.code() == ErrorCode::Internal;
      }
    }
  };
  unsigned jobs = sa.jobs ? sa.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, std::max<std::size_t>(1, rows.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "q,f,classes,cyclic,not_cyclic,completeness\n";
  bool any_error = false, any_internal = false;
  for (const auto& r : rows) {
    csv << s(r.ctx.q) << ",\"" << r.ctx.poly_text() << "\",";
    if (r.result) {
      const auto& sm = r.result->summary;
      csv << sm.total << "," << sm.cyclic << "," << sm.not_cyclic << "," << to_string(sm.completeness) << "\n";
      if (!r.result->consistent()) any_internal = true;
    } else {
      csv << ",,,\"error: " << r.error << "\"\n";
      any_error = true;
      any_internal = any_internal || r.internal;
    }
  }

  std::vector<Json> xv;
  if (!sa.fixtures.empty()) {
    auto loaded = ingest::load_fixture(sa.fixtures);
    xv.push_back(cross_validation_json(sa.fixtures, ingest::cross_validate(loaded.records), loaded.rejected));
  }
  if (sa.fetch) {
    auto cfg = remote_config(sa);
    auto recs = ingest::fetch_remote({q, ca.g}, cfg);
    xv.push_back(cross_validation_json(cfg.endpoint, ingest::cross_validate(recs), {}));
  }

  auto timing = [&](double secs) { return a.no_timing ? std::nullopt : std::optional<double>(secs); };
  if (!sa.out_dir.empty()) {
    fs::create_directories(sa.out_dir);
    for (const auto& r : rows) {
      fs::path p = fs::path(sa.out_dir) / ("q" + s(r.ctx.q) + "_g" + std::to_string(r.ctx.g) + "_" + poly_slug(r.ctx) + ".json");
      if (r.result)
        emit(report_document(*r.result, timing(r.seconds)), p.string());
      else
        emit(Json{{"schema_version", "1"}, {"context", context_json(r.ctx)}, {"error", r.error}}, p.string());
    }
    std::ofstream(fs::path(sa.out_dir) / "sweep.csv", std::ios::binary | std::ios::trunc) << csv.str();
    if (!xv.empty()) {
      Json all = Json::array();
      for (auto& x : xv) all.push_back(x);
      emit(Json{{"schema_version", "1"}, {"cross_validation", all}}, (fs::path(sa.out_dir) / "cross_validation.json").string());
    }
  } else {
    std::cout << csv.str();
  }
  for (const auto& x : xv) {
    std::cout << "\n# cross-validation\n" << x.dump(2) << "\n";
  }

  if (any_internal) return kExitInternal;
  for (const auto& x : xv)
    if (!x["mismatches"].empty()) return kExitNegative;
  return any_error ? kExitNegative : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cyclicity of ordinary simple abelian varieties over finite fields"};
  app.require_subcommand(1);

  ContextArgs vctx, cctx, xctx, sctx;
  ClassifyArgs cargs, sargs;
  SweepArgs sweep;
  std::string out, matrix, ideal;
  std::size_t dim = 0;

  auto* validate = app.add_subcommand("validate", "check a Weil polynomial");
  vctx.add_to(validate, true);

  auto* classify = app.add_subcommand("classify", "classify every variety in an isogeny class");
  cctx.add_to(classify, true);
  classify->add_option("--index-bound", cargs.index_bound, "ideal index bound (default: certified)");
  classify->add_option("--out", out, "output file (default stdout)");
  classify->add_flag("--no-timing", cargs.no_timing, "omit the timing field");

  auto* convert = app.add_subcommand("convert", "matrix <-> ideal via Latimer-MacDuffee");
  xctx.add_to(convert, true);
  auto* mopt = convert->add_option("--matrix", matrix, "rows separated by ';' or a flat list with --dim");
  auto* iopt = convert->add_option("--ideal", ideal, "basis rows in power-basis coordinates, ';' separated");
  convert->add_option("--dim", dim, "matrix dimension for a flat list");
  mopt->excludes(iopt);

  auto* sw = app.add_subcommand("sweep", "classify every ordinary simple class for given p, r, g");
  sctx.add_to(sw, false);
  sw->add_option("--index-bound", sargs.index_bound, "ideal index bound (default: certified)");
  sw->add_option("--out-dir", sweep.out_dir, "write one report per context plus sweep.csv");
  sw->add_option("--fixtures", sweep.fixtures, "JSON-lines fixture to cross-validate");
  sw->add_flag("--fetch", sweep.fetch, "enable network access and cross-validate remote records");
  sw->add_option("--endpoint", sweep.endpoint, "remote endpoint (default $AVCYC_LMFDB_ENDPOINT)");
  sw->add_option("--config", sweep.config, "JSON config with endpoint and cache_dir");
  sw->add_option("--jobs", sweep.jobs, "worker threads (default: all cores)");
  sw->add_flag("--no-timing", sargs.no_timing, "omit timing fields");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(vctx);
    if (*classify) return cmd_classify(cctx, cargs, out);
    if (*convert && matrix.empty() == ideal.empty())
      throw Error(ErrorCode::InvalidArgument, "convert needs exactly one of --matrix and --ideal");
    if (*convert) return cmd_convert(xctx, matrix, ideal, dim);
    if (*sw) return cmd_sweep(sctx, sargs, sweep);
  } catch (const Error& e) {
    std::cout << error_json(e).dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

// rainbow: command-line front end for sparse Eagon-Northcott complexes,
// rainbow DFI strands and polarizations.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rainbow/rainbow.hpp"

using nlohmann::json;
using namespace rainbow;

namespace {

struct Options {
  int n = 0;
  int m = 0;
  std::string order_file;
  bool random_order = false;
  std::uint64_t seed = 1;
  bool allow_large = false;
  std::string out;
  std::string delta_file;
  std::string dual_file;
  std::vector<std::string> deleted;  // facets removed from the full complex
  std::string format = "json";
  bool certify_cw = false;
  std::string mode = "free-seq-necessity";
  int samples = 100;
  int orders = 5;
};

std::vector<ColumnSet> parse_facets(const std::vector<std::string>& items) {
  std::vector<ColumnSet> out;
  for (const auto& item : items) {
    std::stringstream whole(item);
    std::string facet;
    while (std::getline(whole, facet, ';')) {
      ColumnSet f;
      std::stringstream cols(facet);
      std::string tok;
      while (std::getline(cols, tok, ',')) {
        try {
          std::size_t used = 0;
          const int c = std::stoi(tok, &used);
          if (used != tok.size()) throw std::invalid_argument(tok);
          f.push_back(c);
        } catch (const std::exception&) {
          throw Error(ErrorCode::ParseError, "bad column '" + tok + "' in facet '" + facet + "'");
        }
      }
      if (!f.empty()) out.push_back(std::move(f));
    }
  }
  return out;
}

class Session {
 public:
  Session(std::string command, const Options& o) : opt_(o) {
    manifest_.command = std::move(command);
    manifest_.n = o.n;
    manifest_.m = o.m;
    manifest_.prime = prime_from_env();
    if (o.allow_large) {
      try {
        check_size(o.n, o.m);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SizeCap) throw;
        std::cerr << "warning: size caps overridden (" << e.what() << ")\n";
      }
    } else {
      check_size(o.n, o.m);
    }
  }

  const TermOrder& order() {
    if (manifest_.order) return *manifest_.order;
    const VariableMatrix mat(opt_.n, opt_.m);
    if (!opt_.order_file.empty()) {
      TermOrder t = TermOrder::from_json(read_json_file(opt_.order_file));
      if (t.rows() != opt_.n || t.cols() != opt_.m) {
        throw Error(ErrorCode::InvalidArgument, "order file is " + std::to_string(t.rows()) + "x" +
                                                    std::to_string(t.cols()) + ", expected " +
                                                    std::to_string(opt_.n) + "x" + std::to_string(opt_.m));
      }
      initial_ideal_maximal_minors(mat, t);  // rejects ties
      manifest_.order = std::move(t);
    } else if (opt_.random_order) {
      manifest_.seed = opt_.seed;
      manifest_.order = random_term_order(mat, rng());
    } else {
      manifest_.order = TermOrder::diagonal(opt_.n, opt_.m);
    }
    return *manifest_.order;
  }

  std::mt19937_64& rng() {
    if (!rng_) {
      manifest_.seed = opt_.seed;
      rng_.emplace(opt_.seed);
    }
    return *rng_;
  }

  /// Delta from --delta-file, --dual-file or --delete; the full complex
  /// when none is given.
  PureComplex delta() {
    if (manifest_.delta) return *manifest_.delta;
    const int given = !opt_.delta_file.empty() + !opt_.dual_file.empty() + !opt_.deleted.empty();
    if (given > 1) throw Error(ErrorCode::InvalidArgument, "give at most one of --delta-file, --dual-file, --delete");
    PureComplex d = PureComplex::full(opt_.n, opt_.m);
    if (!opt_.delta_file.empty()) {
      d = PureComplex::from_json(read_json_file(opt_.delta_file));
    } else if (!opt_.dual_file.empty()) {
      d = alexander_dual_complex(PureComplex::from_json(read_json_file(opt_.dual_file)));
    } else if (!opt_.deleted.empty()) {
      d = alexander_dual_complex(PureComplex(opt_.n, opt_.m, parse_facets(opt_.deleted)));
    }
    if (d.n() != opt_.n || d.m() != opt_.m) throw Error(ErrorCode::InvalidArgument, "complex shape differs from -n/-m");
    manifest_.delta = d;
    manifest_.dual = alexander_dual_complex(d);
    return d;
  }

  PrimeField field() const { return PrimeField(static_cast<std::uint32_t>(manifest_.prime)); }

  void emit(const std::string& body) const {
    if (opt_.out.empty()) std::cout << body;
    else write_atomically(opt_.out, body);
  }

  void emit_json(json payload) const {
    payload["manifest"] = manifest_.to_json();
    emit(payload.dump(2) + "\n");
  }

  void emit_dot(const std::string& dot) const { emit("// manifest " + manifest_.to_json().dump() + "\n" + dot); }

  /// CSV with the manifest as leading comment line.
  void emit_csv(const std::string& csv) const { emit("# manifest " + manifest_.to_json().dump() + "\n" + csv); }

 private:
  const Options& opt_;
  RunManifest manifest_;
  std::optional<std::mt19937_64> rng_;
};

void cmd_initial_ideal(const Options& o) {
  Session s("initial-ideal", o);
  const auto ideal = initial_ideal_maximal_minors(VariableMatrix(o.n, o.m), s.order());
  s.emit_json({{"ideal", ideal.to_json()}, {"generators", ideal.size()}});
}

void cmd_sparse_en(const Options& o) {
  Session s("sparse-en", o);
  const BasedComplex e = sparse_en(s.order());
  const auto field = s.field();
  if (o.format == "dot") {
    const FacePoset p = face_poset(e);
    s.emit_dot(export_poset(p, PosetFormat::Dot));
    return;
  }
  json out{{"complex", e.to_json()}, {"ranks", e.ranks()}, {"is_complex", check_complex(e)},
           {"is_resolution", is_resolution(e, field)}};
  if (o.certify_cw) {
    const FacePoset p = face_poset(e);
    out["cw_certificate"] = is_cw_poset(p, s.order(), field).to_json();
    out["poset"] = json::parse(export_poset(p, PosetFormat::Json));
  }
  s.emit_json(std::move(out));
}

void cmd_cw_check(const Options& o) {
  Session s("cw-check", o);
  const FacePoset p = face_poset(sparse_en(s.order()));
  const auto cert = is_cw_poset(p, s.order(), s.field());
  s.emit_json({{"cw_certificate", cert.to_json()}, {"elements", p.size()}});
  if (!cert.ok()) throw Error(ErrorCode::NotSupported, "CW certificate failed: " + cert.failure);
}

void cmd_strand(const Options& o) {
  Session s("strand", o);
  const PureComplex d = s.delta();
  const BasedComplex strand = rainbow_linear_strand(d, s.order());
  const BettiTable betti = koszul_betti(rainbow_dfi(d, s.order()), s.field());
  if (o.format == "csv") {
    s.emit_csv(betti.to_csv());
    return;
  }
  const auto coarse = betti.coarse();
  json table = json::array();
  for (const auto& [k, v] : coarse.entries) table.push_back({{"i", k.first}, {"j", k.second}, {"rank", v}});
  s.emit_json({{"strand", strand.to_json()},
               {"ranks", strand.ranks()},
               {"is_linear_strand", is_linear_strand_of_module(strand, s.field())},
               {"betti_totals", coarse.totals()},
               {"betti", table},
               {"betti_csv", betti.to_csv()}});
}

void cmd_betti(const Options& o) {
  Session s("betti", o);
  const PureComplex d = s.delta();
  const BettiTable betti = koszul_betti(rainbow_dfi(d, s.order()), s.field());
  s.emit_csv(betti.to_csv());
}

void cmd_free_seq(const Options& o) {
  Session s("free-seq", o);
  const PureComplex d = s.delta();
  const BasedComplex e = sparse_en(s.order());
  const auto report = find_free_sequence(e, facet_vertices(e, alexander_dual_complex(d), s.order()));
  s.emit_json({{"free_sequence", report.to_json()}});
}

void cmd_polarize(const Options& o) {
  Session s("polarize", o);
  const PureComplex d = s.delta();
  const PureComplex dual = alexander_dual_complex(d);
  if (!overlap_condition(dual)) {
    throw Error(ErrorCode::SetupViolated, "two deleted facets share n - 1 columns");
  }
  const auto rep = certify_polarization(d, s.order(), s.field());
  if (o.format == "csv") {
    s.emit_csv(PolarizationReport::csv_header() + "\n" + rep.csv_row() + "\n");
    return;
  }
  s.emit_json({{"report", rep.to_json()}});
}

/// Random dual complex: facets drawn one at a time, keeping the overlap
/// condition when `setup` is set.
PureComplex random_dual(int n, int m, std::mt19937_64& rng, bool setup) {
  auto all = subsets(m, n);
  std::shuffle(all.begin(), all.end(), rng);
  const std::size_t want = std::uniform_int_distribution<std::size_t>(0, std::min<std::size_t>(all.size(), 6))(rng);
  std::vector<ColumnSet> d;
  for (const auto& a : all) {
    if (d.size() >= want) break;
    auto next = d;
    next.push_back(a);
    if (!setup || overlap_condition(PureComplex(n, m, next))) d = std::move(next);
  }
  return PureComplex(n, m, std::move(d));
}

void cmd_experiment(const Options& o) {
  Session s("experiment", o);
  auto& rng = s.rng();
  const VariableMatrix mat(o.n, o.m);
  std::ostringstream csv;
  if (o.mode == "free-seq-necessity") {
    // linear but no free sequence would answer the open question negatively
    csv << "sample,n,m,r,setup,linear,free_seq\n";
    for (int k = 0; k < o.samples; ++k) {
      const TermOrder order = random_term_order(mat, rng);
      const PureComplex dual = random_dual(o.n, o.m, rng, false);
      const PureComplex d = alexander_dual_complex(dual);
      const MonomialIdeal j = rainbow_dfi(d, order);
      const bool linear = !j.is_zero() && has_linear_resolution(koszul_betti(j, s.field()));
      const BasedComplex e = sparse_en(order);
      const bool fs = find_free_sequence(e, facet_vertices(e, dual, order)).found();
      csv << k << ',' << o.n << ',' << o.m << ',' << dual.size() << ',' << overlap_condition(dual) << ','
          << linear << ',' << fs << '\n';
    }
  } else if (o.mode == "free-vertex-orders") {
    // is there an order making every dual facet a free vertex?
    csv << "sample,n,m,r,orders_tried,found\n";
    for (int k = 0; k < o.samples; ++k) {
      const PureComplex dual = random_dual(o.n, o.m, rng, true);
      int tried = 0;
      bool found = false;
      while (tried < o.orders && !found) {
        ++tried;
        const TermOrder order = tried == 1 ? TermOrder::diagonal(o.n, o.m) : random_term_order(mat, rng);
        const BasedComplex e = sparse_en(order);
        const FacePoset p = face_poset(e);
        const auto free = free_vertices(p);
        found = true;
        for (const auto& a : dual.facets()) {
          const auto node = p.find(initial_minor(order, a).to_string());
          if (!node || std::find(free.begin(), free.end(), *node) == free.end()) {
            found = false;
            break;
          }
        }
      }
      csv << k << ',' << o.n << ',' << o.m << ',' << dual.size() << ',' << tried << ',' << found << '\n';
    }
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown experiment mode " + o.mode);
  }
  s.emit_csv(csv.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse Eagon-Northcott complexes, rainbow DFI strands and polarizations"};
  app.require_subcommand(1);
  Options o;

  auto shape = [&](CLI::App* sub) {
    sub->add_option("-n", o.n, "rows")->required();
    sub->add_option("-m", o.m, "columns")->required();
    sub->add_option("--order-file", o.order_file, "term order JSON {weights, tiebreak}");
    sub->add_flag("--random-order", o.random_order, "draw a random term order from --seed");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_flag("--allow-large", o.allow_large, "override the size caps (warns)");
    sub->add_option("-o,--out", o.out, "output file (written atomically)");
  };
  auto complex_input = [&](CLI::App* sub) {
    sub->add_option("--delta-file", o.delta_file, "pure complex JSON {n, m, facets}");
    sub->add_option("--dual-file", o.dual_file, "dual complex JSON {n, m, facets}");
    sub->add_option("--delete", o.deleted, "facets to delete, e.g. 1,2,3;3,4,5");
  };

  auto* initial = app.add_subcommand("initial-ideal", "initial ideal of the maximal minors");
  shape(initial);
  auto* sparse = app.add_subcommand("sparse-en", "sparse Eagon-Northcott complex");
  shape(sparse);
  sparse->add_option("--export", o.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  sparse->add_flag("--certify-cw", o.certify_cw, "attach a CW-poset certificate");
  auto* strand = app.add_subcommand("strand", "linear strand of a rainbow DFI by restriction");
  shape(strand);
  complex_input(strand);
  strand->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  auto* betti = app.add_subcommand("betti", "multigraded Betti table of a rainbow DFI (CSV)");
  shape(betti);
  complex_input(betti);
  auto* free_seq = app.add_subcommand("free-seq", "free sequence search on the dual facets");
  shape(free_seq);
  complex_input(free_seq);
  auto* polarize = app.add_subcommand("polarize", "certify the Alexander dual as a polarization");
  shape(polarize);
  complex_input(polarize);
  polarize->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  auto* cw = app.add_subcommand("cw-check", "CW-poset certificate of the sparse complex");
  shape(cw);
  auto* experiment = app.add_subcommand("experiment", "exploratory random sweeps (CSV)");
  shape(experiment);
  experiment->add_option("--mode", o.mode, "free-seq-necessity or free-vertex-orders")
      ->check(CLI::IsMember({"free-seq-necessity", "free-vertex-orders"}));
  experiment->add_option("--samples", o.samples, "number of samples")->check(CLI::Range(1, 100000));
  experiment->add_option("--orders", o.orders, "orders tried per sample")->check(CLI::Range(1, 1000));

  CLI11_PARSE(app, argc, argv);

  try {
    if (initial->parsed()) cmd_initial_ideal(o);
    else if (sparse->parsed()) cmd_sparse_en(o);
    else if (strand->parsed()) cmd_strand(o);
    else if (betti->parsed()) cmd_betti(o);
    else if (free_seq->parsed()) cmd_free_seq(o);
    else if (polarize->parsed()) cmd_polarize(o);
    else if (cw->parsed()) cmd_cw_check(o);
    else if (experiment->parsed()) cmd_experiment(o);
  } catch (const Error& e) {
    std::cerr << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
    return 3;
  }
  return 0;
}

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "invchar/characters.hpp"
#include "invchar/flag.hpp"
#include "invchar/io.hpp"
#include "invchar/morse.hpp"
#include "invchar/polytope.hpp"
#include "invchar/toric_trace.hpp"

namespace invchar::cli {

enum class Verdict { Holds, Violated, Error };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "HOLDS";
    case Verdict::Violated: return "VIOLATED";
    case Verdict::Error: return "ERROR";
  }
  return "?";
}

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct RunReport {
  struct Input {
    std::string path;
    std::uint64_t hash = 0;
  };

  std::string command;
  std::vector<Input> inputs;
  std::vector<std::pair<std::string, std::string>> facts;
  std::vector<Table> tables;
  Verdict verdict = Verdict::Holds;
  std::optional<int> failing_degree;
  std::string failure;  // both side values when violated, the message on error
  std::vector<std::pair<std::string, double>> timings_ms;

  int exit_code() const { return verdict == Verdict::Holds ? 0 : verdict == Verdict::Violated ? 1 : 2; }

  std::string fact(std::string_view key) const {
    for (const auto& [k, v] : facts)
      if (k == key) return v;
    return {};
  }

  const Table* table(std::string_view name) const {
    for (const auto& t : tables)
      if (t.name == name) return &t;
    return nullptr;
  }

  /// Machine-readable form; excludes timings so reruns are byte-identical.
  std::string tsv() const {
    std::string s = "command\t" + command + "\n";
    for (const auto& in : inputs) {
      char hex[17];
      std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(in.hash));
      s += "input\t" + in.path + "\t" + hex + "\n";
    }
    for (const auto& [k, v] : facts) s += "fact\t" + k + "\t" + v + "\n";
    for (const auto& t : tables) {
      s += "table\t" + t.name + "\n" + join(t.columns, "\t") + "\n";
      for (const auto& r : t.rows) s += join(r, "\t") + "\n";
    }
    s += "verdict\t" + std::string(to_string(verdict)) + "\n";
    if (failing_degree) s += "failing_degree\t" + std::to_string(*failing_degree) + "\n";
    if (!failure.empty()) s += "failure\t" + failure + "\n";
    return s;
  }

  std::string text() const {
    std::string s = command + ": " + std::string(to_string(verdict)) + "\n";
    if (!failure.empty()) {
      s += "  " + failure;
      if (failing_degree) s += " (degree " + std::to_string(*failing_degree) + ")";
      s += "\n";
    }
    for (const auto& [k, v] : facts) s += "  " + k + " = " + v + "\n";
    for (const auto& t : tables) {
      s += "\n[" + t.name + "]\n";
      std::vector<std::size_t> width(t.columns.size());
      for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
      for (const auto& r : t.rows)
        for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
      auto line = [&](const std::vector<std::string>& cells) {
        std::string l = " ";
        for (std::size_t c = 0; c < cells.size(); ++c) l += " " + cells[c] + std::string(width[c] - cells[c].size(), ' ');
        while (!l.empty() && l.back() == ' ') l.pop_back();
        return l + "\n";
      };
      s += line(t.columns);
      for (const auto& r : t.rows) s += line(r);
    }
    if (!timings_ms.empty()) {
      s += "\n";
      for (const auto& [stage, ms] : timings_ms) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.2f ms", ms);
        s += "  time " + stage + ": " + buf + "\n";
      }
    }
    return s;
  }

 private:
  static std::string join(const std::vector<std::string>& cells, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? sep : "") + cells[i];
    return s;
  }
};

struct Options {
  std::optional<int> expand_order;
};

namespace detail {

class Session {
 public:
  explicit Session(RunReport& r) : report_(r) {}

  std::string load(const std::filesystem::path& path) {
    std::string bytes = io::read_file(path);
    report_.inputs.push_back({path.string(), io::fingerprint(bytes)});
    return bytes;
  }

  template <class F>
  auto timed(const std::string& stage, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    auto finish = [&] {
      const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
      report_.timings_ms.emplace_back(stage, ms.count());
    };
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      finish();
    } else {
      auto result = f();
      finish();
      return result;
    }
  }

 private:
  RunReport& report_;
};

inline RunReport run(std::string command, const std::function<void(RunReport&, Session&)>& body) {
  RunReport report;
  report.command = std::move(command);
  Session session(report);
  try {
    body(report, session);
  } catch (const Error& e) {
    report.verdict = Verdict::Error;
    report.failure = e.what();
    report.failing_degree.reset();
  } catch (const std::exception& e) {
    report.verdict = Verdict::Error;
    report.failure = std::string("internal: ") + e.what();
    report.failing_degree.reset();
  }
  return report;
}

template <class T>
std::string join_numbers(const std::vector<T>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    if constexpr (std::is_same_v<T, Rational>)
      s += v[i].str();
    else
      s += std::to_string(v[i]);
  }
  return s + ")";
}

inline Table betti_table(std::string name, const SignedBettiTable& t) {
  Table out{std::move(name), {"degree", "h+", "h-", "diff"}, {}};
  for (int i = 0; i <= t.top_degree(); ++i) {
    const auto e = t.at(i);
    out.rows.push_back({std::to_string(i), std::to_string(e.plus), std::to_string(e.minus), std::to_string(e.plus - e.minus)});
  }
  return out;
}

inline Table trace_table(const GradedTrace& tr) {
  Table out{"trace", {"degree", "dim", "trace"}, {}};
  for (std::size_t i = 0; i < tr.traces.size(); ++i)
    out.rows.push_back({std::to_string(2 * i), std::to_string(tr.dims[i]), tr.traces[i].str()});
  return out;
}

// Signed differences at even degrees, e.g. (1,0,1) for degrees 0, 2, 4.
inline std::string even_diffs(const SignedBettiTable& t) {
  std::vector<std::int64_t> d;
  for (int i = 0; i <= t.top_degree(); i += 2) d.push_back(t.at(i).plus - t.at(i).minus);
  return join_numbers(d);
}

inline std::string all_diffs(const SignedBettiTable& t) {
  std::vector<std::int64_t> d;
  for (int i = 0; i <= t.top_degree(); ++i) d.push_back(t.at(i).plus - t.at(i).minus);
  return join_numbers(d);
}

// Moves a centrally symmetric polytope so that its center is the origin.
inline HPolytope centered(const HPolytope& p) {
  if (!is_simple(p)) throw Error(ErrorKind::NotSimple, "polytope is not simple");
  auto center = detect_central_symmetry(p);
  if (!center) throw Error(ErrorKind::NotCentrallySymmetric, "polytope is not centrally symmetric");
  return p.translated(Rational(-1) * *center);
}

inline SignedBettiTable table_of(const HPolytope& p, const Matrix& linear) {
  const SimplicialFan fan = normal_fan(p);
  return signed_betti(graded_trace(fan, FanAutomorphism::make(fan, linalg::transpose(linear))));
}

inline SignedBettiTable symmetric_table(const HPolytope& centered_p) {
  return table_of(centered_p, linalg::scale(Rational(-1), linalg::identity(centered_p.dim())));
}

inline int default_expand_order(const SignedBettiTable& t, const Options& opts) {
  return opts.expand_order ? *opts.expand_order : 2 * t.top_degree() + 10;
}

}  // namespace detail

/// f- and h-vectors, simplicity and central symmetry of a polytope file.
inline RunReport cmd_polytope_stats(const std::filesystem::path& path) {
  return detail::run("stats", [&](RunReport& r, detail::Session& s) {
    const HPolytope p = s.timed("parse", [&] { return io::parse_polytope(s.load(path)); });
    const auto f = s.timed("faces", [&] { return f_vector(p); });
    const bool simple = is_simple(p);
    r.facts.emplace_back("dim", std::to_string(p.dim()));
    r.facts.emplace_back("vertices", std::to_string(p.vertices().size()));
    r.facts.emplace_back("facets", std::to_string(p.facets().size()));
    r.facts.emplace_back("f_vector", detail::join_numbers(f));
    r.facts.emplace_back("simple", simple ? "yes" : "no");
    if (simple) r.facts.emplace_back("h_vector", detail::join_numbers(h_vector(p)));
    const auto center = detect_central_symmetry(p);
    r.facts.emplace_back("center", center ? linalg::to_string(*center) : "none");
    Table faces{"f_vector", {"dim", "faces"}, {}};
    for (std::size_t i = 0; i < f.size(); ++i) faces.rows.push_back({std::to_string(i), std::to_string(f[i])});
    r.tables.push_back(std::move(faces));
  });
}

/// h^{2i,+} - h^{2i,-} = C(n,i) for a centrally symmetric simple polytope.
inline RunReport cmd_verify_stanley(const std::filesystem::path& path) {
  return detail::run("verify-stanley", [&](RunReport& r, detail::Session& s) {
    const HPolytope p = detail::centered(io::parse_polytope(s.load(path)));
    const int n = static_cast<int>(p.dim());
    const SignedBettiTable table = s.timed("trace", [&] { return detail::symmetric_table(p); });
    const StanleyReport check = stanley_check(table, n);
    r.facts.emplace_back("n", std::to_string(n));
    r.facts.emplace_back("signed_diffs", detail::even_diffs(table));
    if (n >= 1) r.facts.emplace_back("chi_theta_k_eq_n", chi_from_manifold(table, TorusRank(n)).to_string());
    r.tables.push_back(detail::betti_table("manifold", table));
    Table t{"stanley", {"degree", "lhs", "rhs", "status"}, {}};
    for (const auto& row : check.rows)
      t.rows.push_back({std::to_string(row.degree), std::to_string(row.difference), row.expected.str(), row.ok ? "ok" : "FAIL"});
    r.tables.push_back(std::move(t));
    if (!check.holds()) {
      r.verdict = Verdict::Violated;
      r.failing_degree = *check.first_failure;
      const auto& row = check.rows[*check.first_failure];
      r.failure = "IdentityViolated: lhs " + std::to_string(row.difference) + " != rhs " + row.expected.str();
    }
  });
}

struct ReductionInputs {
  HPolytope polytope;
  AffineInvolution involution;
  SubtorusSpec subtorus;
};

namespace detail {

inline ReductionInputs load_reduction(Session& s, const std::filesystem::path& poly, const std::filesystem::path& inv,
                                      const std::filesystem::path& sub) {
  HPolytope p = io::parse_polytope(s.load(poly));
  AffineInvolution i = io::parse_involution(s.load(inv), p.dim());
  SubtorusSpec t = io::parse_subtorus(s.load(sub), p.dim());
  i.validate();
  if (!i.preserves(p)) throw Error(ErrorKind::IncompatibleInvolution, "the involution does not map the polytope to itself");
  return {std::move(p), std::move(i), std::move(t)};
}

}  // namespace detail

/// Both sides of the main identity: M from the polytope, M0 from the slice.
inline RunReport cmd_verify_main(const std::filesystem::path& poly, const std::filesystem::path& inv, const std::filesystem::path& sub) {
  return detail::run("verify-main", [&](RunReport& r, detail::Session& s) {
    const ReductionInputs in = detail::load_reduction(s, poly, inv, sub);
    const TorusRank k(static_cast<int>(in.subtorus.rank()));
    const SliceResult slice = s.timed("slice", [&] { return slice_reduce(in.polytope, in.involution, in.subtorus); });
    const SignedBettiTable table = s.timed("manifold", [&] { return detail::table_of(in.polytope, in.involution.linear); });
    const SignedBettiTable table0 = s.timed("reduction", [&] { return detail::table_of(slice.reduced, slice.involution.linear); });
    const MainIdentityReport check = verify_main_identity(table, table0, k);
    r.facts.emplace_back("k", std::to_string(k.value()));
    r.facts.emplace_back("manifold_diffs", detail::all_diffs(table));
    r.facts.emplace_back("reduction_diffs", detail::all_diffs(table0));
    r.facts.emplace_back("chi_manifold", check.manifold_side.to_string());
    r.facts.emplace_back("chi_reduction", check.reduction_side.to_string());
    r.tables.push_back(detail::betti_table("manifold", table));
    r.tables.push_back(detail::betti_table("reduction", table0));
    Table t{"identity", {"degree", "lhs", "rhs", "status"}, {}};
    for (const auto& row : check.rows) t.rows.push_back({std::to_string(row.degree), row.lhs.str(), row.rhs.str(), row.ok ? "ok" : "FAIL"});
    r.tables.push_back(std::move(t));
    if (!check.holds()) {
      r.verdict = Verdict::Violated;
      if (check.first_failure) {
        const auto& row = check.rows[*check.first_failure];
        r.failing_degree = row.degree;
        r.failure = "IdentityViolated: lhs " + row.lhs.str() + " != rhs " + row.rhs.str();
      } else {
        r.failure = "IdentityViolated: chi " + check.manifold_side.to_string() + " != " + check.reduction_side.to_string();
      }
    }
  });
}

/// The reduced polytope, its involution and the slice coordinates.
inline RunReport cmd_reduce(const std::filesystem::path& poly, const std::filesystem::path& inv, const std::filesystem::path& sub) {
  return detail::run("reduce", [&](RunReport& r, detail::Session& s) {
    const ReductionInputs in = detail::load_reduction(s, poly, inv, sub);
    const SliceResult slice = s.timed("slice", [&] { return slice_reduce(in.polytope, in.involution, in.subtorus); });
    const HPolytope& q = slice.reduced;
    r.facts.emplace_back("dim", std::to_string(q.dim()));
    r.facts.emplace_back("vertices", std::to_string(q.vertices().size()));
    r.facts.emplace_back("f_vector", detail::join_numbers(f_vector(q)));
    r.facts.emplace_back("base_point", linalg::to_string(slice.base_point));
    Table facets{"facets", {}, {}};
    for (std::size_t j = 0; j < q.dim(); ++j) facets.columns.push_back("a" + std::to_string(j + 1));
    facets.columns.push_back("b");
    for (const auto& f : q.facets()) {
      std::vector<std::string> row;
      for (const auto& x : f.normal) row.push_back(x.str());
      row.push_back(f.offset.str());
      facets.rows.push_back(std::move(row));
    }
    r.tables.push_back(std::move(facets));
    Table vertices{"vertices", {"index", "point"}, {}};
    for (std::size_t i = 0; i < q.vertices().size(); ++i)
      vertices.rows.push_back({std::to_string(i), linalg::to_string(q.vertices()[i].point)});
    r.tables.push_back(std::move(vertices));
    Table invol{"involution", {"row", "linear", "translation"}, {}};
    for (std::size_t i = 0; i < slice.involution.linear.size(); ++i)
      invol.rows.push_back({std::to_string(i), linalg::to_string(slice.involution.linear[i]), slice.involution.translation[i].str()});
    r.tables.push_back(std::move(invol));
    Table basis{"basis", {"row", "vector"}, {}};
    for (std::size_t i = 0; i < slice.basis.size(); ++i) basis.rows.push_back({std::to_string(i), linalg::to_string(slice.basis[i])});
    r.tables.push_back(std::move(basis));
  });
}

/// Graded trace of a fan involution. With a fan file the involution matrix
/// file is optional (default -id); with a polytope file the involution is
/// y -> -y about the center of symmetry.
struct TraceInputs {
  std::optional<std::filesystem::path> fan;
  std::optional<std::filesystem::path> matrix;
  std::optional<std::filesystem::path> polytope;
};

inline RunReport cmd_trace(const TraceInputs& in) {
  return detail::run("trace", [&](RunReport& r, detail::Session& s) {
    SimplicialFan fan;
    Matrix psi;
    if (in.polytope) {
      if (in.fan || in.matrix) throw Error(ErrorKind::InvalidInput, "give either a polytope or a fan, not both");
      fan = normal_fan(detail::centered(io::parse_polytope(s.load(*in.polytope))));
      psi = linalg::scale(Rational(-1), linalg::identity(fan.rank));
    } else if (in.fan) {
      fan = io::parse_fan(s.load(*in.fan));
      psi = in.matrix ? io::parse_matrix(s.load(*in.matrix), fan.rank) : linalg::scale(Rational(-1), linalg::identity(fan.rank));
    } else {
      throw Error(ErrorKind::InvalidInput, "trace needs a fan or a polytope");
    }
    const FanAutomorphism aut = FanAutomorphism::make(fan, psi);
    const GradedTrace tr = s.timed("trace", [&] { return graded_trace(fan, aut); });
    const SignedBettiTable table = signed_betti(tr);
    r.facts.emplace_back("rank", std::to_string(fan.rank));
    r.facts.emplace_back("rays", std::to_string(fan.rays.size()));
    r.facts.emplace_back("trace_poly", tr.trace_poly().to_string());
    r.facts.emplace_back("betti", detail::join_numbers(tr.dims));
    r.tables.push_back(detail::trace_table(tr));
    r.tables.push_back(detail::betti_table("signed_betti", table));
  });
}

struct MorseInputs {
  std::optional<std::filesystem::path> polytope;
  std::optional<std::filesystem::path> critical;
  std::optional<std::filesystem::path> betti;
  std::optional<int> k;
};

/// Perfection of |mu|^2 for the trivial, sign and regular coefficient systems.
inline RunReport cmd_morse(const MorseInputs& in, const Options& opts = {}) {
  return detail::run("morse", [&](RunReport& r, detail::Session& s) {
    CriticalData data;
    SignedBettiTable table;
    int k = 0;
    if (in.polytope) {
      if (in.critical || in.betti) throw Error(ErrorKind::InvalidInput, "give either a polytope or critical data, not both");
      const HPolytope p = detail::centered(io::parse_polytope(s.load(*in.polytope)));
      k = static_cast<int>(p.dim());
      if (in.k && *in.k != k) throw Error(ErrorKind::InvalidInput, "automatic critical data uses the full torus, k = n");
      data = s.timed("critical", [&] { return full_torus_critical_data(p); });
      table = s.timed("trace", [&] { return detail::symmetric_table(p); });
    } else {
      if (!in.critical || !in.betti || !in.k) throw Error(ErrorKind::InvalidInput, "morse needs --polytope, or --crit with --betti and --k");
      const std::string text = s.load(*in.critical);
      data = io::parse_critical_data(text, in.critical->parent_path());
      table = io::parse_betti_table(s.load(*in.betti));
      k = *in.k;
    }
    const int order = detail::default_expand_order(table, opts);
    const PerfectionReport rep = s.timed("series", [&] { return perfection_check(data, table, TorusRank(k), order); });
    r.facts.emplace_back("k", std::to_string(k));
    r.facts.emplace_back("components", std::to_string(data.components.size()));
    r.facts.emplace_back("expand_order", std::to_string(order));
    r.facts.emplace_back("chi_from_morse", rep.from_morse.to_string());
    r.facts.emplace_back("chi_from_manifold", rep.from_manifold.to_string());
    r.facts.emplace_back("additive", rep.additive ? "yes" : "no");
    Table comps{"components", {"id", "index", "stab_rank", "series", "pair"}, {}};
    for (const auto& c : data.components)
      comps.rows.push_back({c.id, std::to_string(c.index), std::to_string(c.stab_rank), c.t_series.to_string(), c.paired_with.value_or("-")});
    r.tables.push_back(std::move(comps));
    Table t{"perfection", {"rho", "counting", "expected", "residue", "residue_kind", "status"}, {}};
    for (const auto& e : rep.entries)
      t.rows.push_back({std::string(to_string(e.rho)), e.counting.to_string(), e.expected.to_string(), e.residue.to_string(),
                        std::string(to_string(e.residue_kind)), e.perfect() && e.series_agree ? "ok" : "FAIL"});
    r.tables.push_back(std::move(t));

    for (const auto& e : rep.entries) {
      if (e.perfect() && e.series_agree) continue;
      r.verdict = Verdict::Violated;
      const Poly lhs = series_expand(e.counting, order);
      const Poly rhs = series_expand(e.expected, order);
      for (int d = 0; d <= order; ++d)
        if (lhs[d] != rhs[d]) {
          r.failing_degree = d;
          break;
        }
      const std::string kind = e.residue_kind == ResidueKind::NonBott ? "NonBottResidue" : "PerfectionViolated";
      r.failure = kind + " (" + std::string(to_string(e.rho)) + "): counting " + e.counting.to_string() + " != expected " + e.expected.to_string();
      return;
    }
    if (!rep.consistent() || !(rep.from_morse == rep.from_manifold)) {
      r.verdict = Verdict::Violated;
      r.failure = "PerfectionViolated: chi from Morse " + rep.from_morse.to_string() + " != " + rep.from_manifold.to_string();
    }
  });
}

struct FlagInputs {
  int n = 0;
  std::vector<Rational> spectrum;  // empty: symmetric default
  std::vector<Rational> weights;   // empty: 1..n
  std::optional<std::filesystem::path> spec_file;  // overrides the fields above
};

/// Trace of θ on the cohomology of the complete flag variety and the
/// predicted signed Betti numbers of its circle reduction.
inline RunReport cmd_flag(const FlagInputs& in) {
  return detail::run("flag", [&](RunReport& r, detail::Session& s) {
    flag::FlagSpec spec;
    if (in.spec_file) {
      spec = io::parse_flag_spec(s.load(*in.spec_file));
    } else {
      if (in.n < 2) throw Error(ErrorKind::InvalidInput, "flag variety needs n >= 2, got " + std::to_string(in.n));
      spec = flag::FlagSpec::standard(in.n);
      if (!in.spectrum.empty()) spec.spectrum = in.spectrum;
      if (!in.weights.empty()) spec.weights = in.weights;
    }
    if (!flag::check_moment_compat(spec)) throw Error(ErrorKind::IncompatibleInvolution, "moment map is not odd under θ");
    const int n = spec.n;
    const GradedTrace tr = s.timed("trace", [&] { return flag::theta_trace(n); });
    const SignedBettiTable table = signed_betti(tr);
    const Character chi = chi_from_manifold(table, TorusRank(1));
    r.facts.emplace_back("n", std::to_string(n));
    r.facts.emplace_back("trace_poly", tr.trace_poly().to_string());
    r.facts.emplace_back("chi_theta", chi.to_string());
    r.tables.push_back(detail::trace_table(tr));
    r.tables.push_back(detail::betti_table("signed_betti", table));
    const auto [q, rem] = divmod(table.signed_poly(), Poly::binomial_term(1, 2));
    if (!rem.is_zero()) {
      r.verdict = Verdict::Violated;
      r.failing_degree = rem.degree();
      r.failure = "NotDivisible: signed Betti polynomial leaves remainder " + rem.to_string() + " modulo 1 + t^2";
      return;
    }
    r.facts.emplace_back("predicted_reduction", q.to_string());
    Table pred{"prediction", {"degree", "diff"}, {}};
    for (int i = 0; i <= q.degree(); ++i) pred.rows.push_back({std::to_string(i), q[i].str()});
    r.tables.push_back(std::move(pred));
  });
}

}  // namespace invchar::cli

#pragma once
// Job files and the output documents of the command-line front end.
//
// Job file:
//   # comment
//   order: x < y < z
//   x*y*z + 1
//   x^2 + x
//
// The first non-comment line names the variables in increasing order; every
// further non-empty line is one polynomial. Output lists each component as
// its chain (ascending by leader) and the inequation product.

#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tdecomp/text.hpp"
#include "tdecomp/verify.hpp"

namespace tdecomp {

enum class JobMode { algebraic, differential };
enum class OutputFormat { text, json };

struct Job {
  JobMode mode = JobMode::algebraic;
  std::vector<std::string> order;
  std::vector<std::string> system;
  bool verify = false;
  std::uint64_t seed = 0;
  std::size_t max_branches = 10000;
  OutputFormat format = OutputFormat::text;
  bool trace = false;
};

struct RunResult {
  int exit_code = 0;
  std::string output; // the document, always terminated by a newline
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verify_failed = 1;
inline constexpr int parse_error = 2;
inline constexpr int inconsistent = 3;
inline constexpr int branch_limit = 4;
inline constexpr int other_error = 5;
} // namespace exit_code

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

inline VarOrder make_order(const Job& job) {
  return job.mode == JobMode::differential ? VarOrder::differential(job.order) : VarOrder::algebraic(job.order);
}

} // namespace detail

// Reads order and system from a job file. ParseError positions are byte
// offsets into `text`.
inline Job read_job(std::string_view text, JobMode mode) {
  Job job;
  job.mode = mode;
  bool have_order = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::string_view body = detail::trim(line);
    const std::size_t at = start + (body.empty() ? 0 : std::size_t(body.data() - line.data()));
    if (!body.empty()) {
      if (!have_order) {
        if (body.substr(0, 6) != "order:") throw ParseError("expected 'order: x < y < ...'", at);
        std::string_view rest = body.substr(6);
        std::size_t pos = at + 6;
        while (true) {
          std::size_t lt = rest.find('<');
          std::string_view name = detail::trim(rest.substr(0, lt));
          if (!detail::is_identifier(name)) throw ParseError("bad variable name '" + std::string(name) + "'", pos);
          job.order.emplace_back(name);
          if (lt == std::string_view::npos) break;
          pos += lt + 1;
          rest = rest.substr(lt + 1);
        }
        try {
          detail::make_order(job);
        } catch (const ParseError&) {
          throw;
        } catch (const Error& e) {
          throw ParseError(e.what(), at);
        }
        have_order = true;
      } else {
        try {
          parse_poly(body, detail::make_order(job));
        } catch (const ParseError& e) {
          throw ParseError(e.reason, at + e.position);
        }
        job.system.emplace_back(body);
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  if (!have_order) throw ParseError("missing 'order:' line", text.size());
  if (job.system.empty()) throw ParseError("no polynomials in the system", text.size());
  return job;
}

namespace detail {

using Json = nlohmann::ordered_json;

inline Json poly_list(const std::vector<Poly>& ps, const VarOrder& ord) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(to_string(p, ord));
  return a;
}

inline Json trace_json(const TraceNode& t, const VarOrder& ord) {
  Json n;
  n["id"] = t.id;
  n["parent"] = t.parent;
  n["found"] = poly_list(t.triple.found, ord);
  n["pending"] = poly_list(t.triple.pending, ord);
  n["ineqs"] = poly_list(t.triple.ineqs, ord);
  n["eliminated"] = t.eliminated ? Json(ord.name(*t.eliminated)) : Json(nullptr);
  return n;
}

inline Json report_json(const VerifyReport& r, bool certificates) {
  Json v;
  v["forward"] = r.forward;
  v["backward"] = r.backward;
  v["residual_max"] = r.residual_max;
  v["seed"] = r.seed;
  v["forward_points"] = r.forward_points;
  v["backward_points"] = r.backward_points;
  v["empty_chains"] = r.empty_chains;
  v["backward_skipped"] = r.backward_skipped;
  v["certificates"] = certificates;
  v["pass"] = r.pass() && certificates;
  return v;
}

inline std::string join(const Json& list, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < list.size(); ++i) out += (i ? sep : "") + list[i].get<std::string>();
  return out;
}

inline std::string render_text(const Json& doc) {
  std::ostringstream os;
  if (doc.contains("error")) {
    const Json& e = doc["error"];
    os << "error: " << e["kind"].get<std::string>() << ": " << e["message"].get<std::string>() << "\n";
    return os.str();
  }
  os << "mode: " << doc["mode"].get<std::string>() << "\n";
  os << "order: " << join(doc["order"], " < ") << "\n";
  os << "components: " << doc["components"].size() << "\n";
  for (const auto& c : doc["components"])
    os << "[" << join(c["chain"], ", ") << "] / " << c["ineq_product"].get<std::string>() << "\n";
  if (doc.contains("verify")) {
    const Json& v = doc["verify"];
    os << "verify: forward " << v["forward"].get<double>() << " (" << v["forward_points"].get<std::size_t>()
       << " points), backward " << v["backward"].get<double>() << " (" << v["backward_points"].get<std::size_t>()
       << " points" << (v["backward_skipped"].get<bool>() ? ", skipped" : "") << "), residual_max "
       << v["residual_max"].get<double>() << ", certificates " << (v["certificates"].get<bool>() ? "pass" : "fail")
       << ", seed " << v["seed"].get<std::uint64_t>() << ": " << (v["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
  }
  if (doc.contains("trace")) {
    os << "trace:\n";
    for (const auto& n : doc["trace"]) {
      os << "  " << n["id"].get<std::size_t>() << " <- " << n["parent"].get<std::size_t>();
      if (!n["eliminated"].is_null()) os << "  eliminate " << n["eliminated"].get<std::string>();
      os << "  found [" << join(n["found"], ", ") << "] pending [" << join(n["pending"], ", ") << "] ineqs ["
         << join(n["ineqs"], ", ") << "]\n";
    }
  }
  return os.str();
}

inline RunResult finish(const Json& doc, OutputFormat fmt, int code) {
  return {code, fmt == OutputFormat::json ? doc.dump(2) + "\n" : render_text(doc)};
}

inline RunResult fail(const Job& job, const char* kind, const std::string& message, int code,
                      std::optional<std::size_t> position = std::nullopt) {
  Json doc;
  doc["schema"] = 1;
  doc["error"]["kind"] = kind;
  doc["error"]["message"] = message;
  if (position) doc["error"]["position"] = *position;
  return finish(doc, job.format, code);
}

} // namespace detail

// Runs one job. Deterministic: the same job (including the seed) gives
// byte-identical output.
inline RunResult run(const Job& job) {
  using detail::Json;
  try {
    const VarOrder ord = detail::make_order(job);
    std::vector<Poly> H;
    for (const auto& s : job.system) H.push_back(parse_poly(s, ord));

    Json doc;
    doc["schema"] = 1;
    doc["mode"] = job.mode == JobMode::algebraic ? "algebraic" : "differential";
    doc["order"] = job.order;
    doc["system"] = detail::poly_list(H, ord);
    Json trace = Json::array();
    auto on_node = [&](const TraceNode& t) { trace.push_back(detail::trace_json(t, ord)); };

    Json comps = Json::array();
    std::optional<VerifyReport> report;
    bool certificates = true;
    VerifyConfig cfg;
    cfg.seed = job.seed;
    if (job.mode == JobMode::algebraic) {
      DecomposeOptions opt;
      opt.max_branches = job.max_branches;
      if (job.trace) opt.trace = on_node;
      auto chains = decompose(H, ord, opt);
      for (const auto& c : chains) {
        comps.push_back({{"chain", detail::poly_list(c.polys, ord)}, {"ineq_product", to_string(c.ineq_product, ord)}});
        certificates = certificates && chain_regularity_certificate(c).pass;
      }
      if (job.verify) report = check_decomposition(H, chains, ord.vars(), cfg);
    } else {
      DiffDecomposeOptions opt;
      opt.max_branches = job.max_branches;
      if (job.trace) opt.trace = on_node;
      auto chains = ddecompose(H, ord, opt);
      for (const auto& c : chains) {
        comps.push_back({{"chain", detail::poly_list(c.polys, ord)}, {"ineq_product", to_string(c.ineq_product, ord)}});
        certificates = certificates && dchain_saturation_certificate(c).pass;
      }
      if (job.verify) report = check_ddecomposition(H, chains, ord.size(), cfg);
    }
    doc["components"] = std::move(comps);
    int code = exit_code::ok;
    if (report) {
      doc["verify"] = detail::report_json(*report, certificates);
      if (!doc["verify"]["pass"].get<bool>()) code = exit_code::verify_failed;
    }
    if (job.trace) doc["trace"] = std::move(trace);
    return detail::finish(doc, job.format, code);
  } catch (const ParseError& e) {
    return detail::fail(job, "ParseError", e.what(), exit_code::parse_error, e.position);
  } catch (const EmptySystem& e) {
    return detail::fail(job, "ParseError", e.what(), exit_code::parse_error);
  } catch (const Inconsistent& e) {
    return detail::fail(job, "Inconsistent", e.what(), exit_code::inconsistent);
  } catch (const BranchLimitExceeded& e) {
    return detail::fail(job, "BranchLimitExceeded", e.what(), exit_code::branch_limit);
  } catch (const Error& e) {
    return detail::fail(job, "Error", e.what(), exit_code::other_error);
  }
}

// read_job followed by run; file errors are reported like any other error.
// Order and system in `options` are replaced by the file's.
inline RunResult run_file(std::string_view text, Job options) {
  try {
    Job file = read_job(text, options.mode);
    options.order = std::move(file.order);
    options.system = std::move(file.system);
  } catch (const ParseError& e) {
    return detail::fail(options, "ParseError", e.what(), exit_code::parse_error, e.position);
  }
  return run(options);
}

} // namespace tdecomp

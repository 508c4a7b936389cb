#include "ccbc/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ccbc {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string join(std::span<const double> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += format_double(v[i]);
  }
  return s;
}

double to_double(const std::string& key, const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') throw std::runtime_error("report: bad number for '" + key + "': " + text);
  return v;
}

std::vector<double> to_doubles(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(to_double(key, tok));
  return out;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw std::runtime_error("report: bad flag for '" + key + "': " + text);
}

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

void write_solution_report(std::ostream& out, const SolutionReport& r) {
  const bool central = r.sigma_x == r.sigma_y;
  const auto& v = r.verification;
  out << "n = " << r.bodies << '\n';
  out << "mass = " << format_double(r.mass) << '\n';
  out << "sigma_x = " << format_double(r.sigma_x) << '\n';
  out << "sigma_y = " << format_double(r.sigma_y) << '\n';
  out << "mode = " << (central ? "central" : "balanced") << '\n';
  out << "objective = " << format_double(r.solution.objective) << '\n';
  out << "coordinates = " << join(r.solution.point.coords()) << '\n';
  out << "signature = " << join(r.solution.signature) << '\n';
  out << "eigenvalues = " << join(r.solution.eigenvalues) << '\n';
  out << "inertia_residual = " << format_double(v.basic.inertia_residual) << '\n';
  out << "center_of_mass = " << join(v.basic.center) << '\n';
  out << "com_norm = " << format_double(v.basic.com_norm) << '\n';
  if (v.quadratic) {
    out << "quadratic_rms = " << format_double(v.quadratic->rms) << '\n';
    out << "quadratic_max_err = " << format_double(v.quadratic->max_err) << '\n';
    out << "quadratic_samples = " << v.quadratic->samples << '\n';
  }
  if (v.krawczyk) {
    out << "zero_in_f = " << flag(v.krawczyk->zero_in_f) << '\n';
    out << "unique = " << flag(v.krawczyk->unique) << '\n';
    out << "krawczyk_inconclusive = " << flag(v.krawczyk->inconclusive) << '\n';
    if (!v.krawczyk->note.empty()) out << "krawczyk_note = " << v.krawczyk->note << '\n';
  }
  out << "degenerate_count = " << r.degenerate.size() << '\n';
  for (std::size_t i = 0; i < r.degenerate.size(); ++i)
    out << "degenerate_" << i + 1 << " = " << join(r.degenerate[i].coords()) << '\n';
  if (v.ac_residual) out << "ac_residual = " << format_double(*v.ac_residual) << '\n';
  if (v.morse_index) out << "morse_index = " << *v.morse_index << '\n';
  if (v.isotropy_index) out << "isotropy_index = " << v.isotropy_index->to_string() << '\n';
  if (r.morse_residual) out << "morse_equation_residual = " << r.morse_residual->to_string() << '\n';
}

SolutionReport parse_solution_report(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) throw std::runtime_error("report: malformed line: " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 3);
  }
  auto need = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw std::runtime_error("report: missing key '" + key + "'");
    return it->second;
  };
  auto has = [&](const std::string& key) { return kv.count(key) > 0; };

  SolutionReport r;
  r.bodies = static_cast<int>(to_double("n", need("n")));
  r.mass = to_double("mass", need("mass"));
  r.sigma_x = to_double("sigma_x", need("sigma_x"));
  r.sigma_y = to_double("sigma_y", need("sigma_y"));
  r.solution.objective = to_double("objective", need("objective"));
  r.solution.point = Configuration(to_doubles("coordinates", need("coordinates")));
  r.solution.signature = to_doubles("signature", need("signature"));
  r.solution.eigenvalues = to_doubles("eigenvalues", need("eigenvalues"));

  auto& v = r.verification;
  v.basic.inertia_residual = to_double("inertia_residual", need("inertia_residual"));
  const auto c = to_doubles("center_of_mass", need("center_of_mass"));
  if (c.size() != 2) throw std::runtime_error("report: center_of_mass needs two values");
  v.basic.center = {c[0], c[1]};
  v.basic.com_norm = to_double("com_norm", need("com_norm"));
  if (has("quadratic_rms")) {
    QuadraticTest t;
    t.rms = to_double("quadratic_rms", need("quadratic_rms"));
    t.max_err = to_double("quadratic_max_err", need("quadratic_max_err"));
    t.samples = static_cast<std::size_t>(to_double("quadratic_samples", need("quadratic_samples")));
    v.quadratic = t;
  }
  if (has("zero_in_f")) {
    KrawczykResult k;
    k.zero_in_f = to_bool("zero_in_f", need("zero_in_f"));
    k.unique = to_bool("unique", need("unique"));
    k.inconclusive = to_bool("krawczyk_inconclusive", need("krawczyk_inconclusive"));
    if (has("krawczyk_note")) k.note = need("krawczyk_note");
    v.krawczyk = k;
  }
  const auto ndeg = static_cast<std::size_t>(to_double("degenerate_count", need("degenerate_count")));
  for (std::size_t i = 0; i < ndeg; ++i) {
    const std::string key = "degenerate_" + std::to_string(i + 1);
    r.degenerate.emplace_back(to_doubles(key, need(key)));
  }
  if (has("ac_residual")) v.ac_residual = to_double("ac_residual", need("ac_residual"));
  if (has("morse_index")) v.morse_index = static_cast<int>(to_double("morse_index", need("morse_index")));
  try {
    if (has("isotropy_index")) v.isotropy_index = Rational::parse(need("isotropy_index"));
    if (has("morse_equation_residual")) r.morse_residual = Rational::parse(need("morse_equation_residual"));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("report: ") + e.what());
  }
  return r;
}

void write_summary_header(std::ostream& out) { out << kSummaryHeader << '\n'; }

void write_summary_row(std::ostream& out, const SummaryRow& row) {
  char wall[32];
  std::snprintf(wall, sizeof wall, "%.3f", row.wall_time_s);
  out << row.n << ',' << format_double(row.sigma_x) << ',' << format_double(row.sigma_y) << ',' << row.n_sol << ','
      << row.ns0 << ',' << row.subsets << ',' << row.k_star << ',' << row.k0 << ',' << wall << ',' << row.sampler
      << ',' << row.seed << '\n';
}

void plot_configuration(std::ostream& out, const Problem& p, const Configuration& q, const std::string& title) {
  const double sx = std::sqrt(p.mass() * p.sigma_x());
  const double sy = std::sqrt(p.mass() * p.sigma_y());
  char buf[256];
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" viewBox=\"-1.2 -1.2 2.4 2.4\">\n";
  out << "  <title>" << title << "</title>\n";
  out << "  <rect x=\"-1.2\" y=\"-1.2\" width=\"2.4\" height=\"2.4\" fill=\"white\"/>\n";
  out << "  <rect x=\"-1\" y=\"-1\" width=\"2\" height=\"2\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"0.005\"/>\n";
  out << "  <line x1=\"-1.1\" y1=\"0\" x2=\"1.1\" y2=\"0\" stroke=\"#888888\" stroke-width=\"0.005\"/>\n";
  out << "  <line x1=\"0\" y1=\"-1.1\" x2=\"0\" y2=\"1.1\" stroke=\"#888888\" stroke-width=\"0.005\"/>\n";
  for (int i = 0; i < q.bodies(); ++i) {
    // SVG y grows downward.
    const double x = q.x(i) * sx;
    const double y = 0.0 - q.y(i) * sy;
    std::snprintf(buf, sizeof buf, "  <circle cx=\"%.6f\" cy=\"%.6f\" r=\"0.035\" fill=\"#1f4e9c\"/>\n", x, y);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "  <text x=\"%.6f\" y=\"%.6f\" font-size=\"0.08\" font-family=\"sans-serif\">%d</text>\n", x + 0.045,
                  y - 0.045, i + 1);
    out << buf;
  }
  out << "</svg>\n";
}

}  // namespace ccbc

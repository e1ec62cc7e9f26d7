#include "winter/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "winter/error.hpp"
#include "winter/krein.hpp"

namespace winter {
namespace {

using nlohmann::json;

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw std::invalid_argument("malformed " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

std::string fmt17(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string fmt6(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

cplx gamma_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_string()) return parse_complex(j.get<std::string>());
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw std::invalid_argument("gamma must be a number, an \"a+bi\" string or [re, im]");
}

void reject_unknown(const json& obj, std::initializer_list<std::string_view> keys, std::string_view where) {
  if (!obj.is_object()) throw std::invalid_argument(std::string(where) + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw std::invalid_argument("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

double number_at(const json& obj, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw std::invalid_argument(std::string(key) + " must be a number");
  return v.get<double>();
}

GpiParams params_from_json(const json& j) {
  reject_unknown(j, {"alpha", "beta", "gamma"}, "interaction");
  GpiParams p;
  if (j.contains("alpha")) p.alpha = number_at(j, "alpha");
  if (j.contains("beta")) p.beta = number_at(j, "beta");
  if (j.contains("gamma")) p.gamma = gamma_from_json(j.at("gamma"));
  return p;
}

std::string describe(const GpiParams& p) {
  return "alpha=" + fmt6(p.alpha) + " beta=" + fmt6(p.beta) + " gamma=" + format_complex(p.gamma);
}

std::string class_label(GpiClass c) { return std::string(to_string(c)) + "-type"; }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::invalid_argument("failed writing '" + path + "'");
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

double csv_number(const std::string& field) {
  if (field.empty()) return std::nan("");
  return parse_double(field, "CSV number");
}

}  // namespace

cplx parse_complex(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  if (s.back() != 'i') return {parse_double(s, "complex literal"), 0.0};

  s.pop_back();
  // Split at the last sign that is not an exponent sign and not the leading sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  const std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  if (im_part.empty() || im_part == "+") im_part = "1";
  if (im_part == "-") im_part = "-1";
  const double re = re_part.empty() ? 0.0 : parse_double(re_part, "complex literal");
  return {re, parse_double(im_part, "complex literal")};
}

std::string format_complex(cplx z) {
  std::ostringstream os;
  os << std::setprecision(17) << z.real() + 0.0 << (std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

GpiParams parse_interaction(std::string_view text) {
  GpiParams p;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view item = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    if (!item.empty()) {
      const std::size_t eq = item.find('=');
      if (eq == std::string_view::npos) throw std::invalid_argument("interaction items must be key=value");
      const std::string_view key = item.substr(0, eq);
      const std::string_view value = item.substr(eq + 1);
      if (key == "alpha") {
        p.alpha = parse_double(value, "alpha");
      } else if (key == "beta") {
        p.beta = parse_double(value, "beta");
      } else if (key == "gamma") {
        p.gamma = parse_complex(value);
      } else {
        throw std::invalid_argument("unknown interaction key '" + std::string(key) + "'");
      }
    }
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return p;
}

double RunConfig::im_min() const {
  return search.im_min ? *search.im_min : default_im_min(channel, search.re_max);
}

void apply_json(RunConfig& config, const json& doc) {
  reject_unknown(doc, {"interaction", "channel", "search", "outputs", "tolerances"}, "config");
  if (doc.contains("interaction")) {
    const json& j = doc.at("interaction");
    config.interaction.clear();
    if (j.is_array()) {
      for (const json& item : j) config.interaction.push_back(params_from_json(item));
    } else {
      config.interaction.push_back(params_from_json(j));
    }
    if (config.interaction.empty()) throw std::invalid_argument("interaction list is empty");
  }
  if (doc.contains("channel")) {
    const json& j = doc.at("channel");
    reject_unknown(j, {"l", "radius"}, "channel");
    if (j.contains("l")) {
      if (!j.at("l").is_number_integer()) throw std::invalid_argument("channel.l must be an integer");
      config.channel.l = j.at("l").get<int>();
    }
    if (j.contains("radius")) config.channel.radius = number_at(j, "radius");
  }
  if (doc.contains("search")) {
    const json& j = doc.at("search");
    reject_unknown(j, {"re_max", "im_min"}, "search");
    if (j.contains("re_max")) config.search.re_max = number_at(j, "re_max");
    if (j.contains("im_min")) {
      const json& v = j.at("im_min");
      if (v.is_string() && v.get<std::string>() == "auto") {
        config.search.im_min.reset();
      } else if (v.is_number()) {
        config.search.im_min = v.get<double>();
      } else {
        throw std::invalid_argument("search.im_min must be a number or \"auto\"");
      }
    }
  }
  if (doc.contains("outputs")) {
    const json& j = doc.at("outputs");
    reject_unknown(j, {"csv_path", "svg_path", "table"}, "outputs");
    if (j.contains("csv_path")) config.outputs.csv_path = j.at("csv_path").get<std::string>();
    if (j.contains("svg_path")) config.outputs.svg_path = j.at("svg_path").get<std::string>();
    if (j.contains("table")) config.outputs.table = j.at("table").get<bool>();
  }
  if (doc.contains("tolerances")) {
    const json& j = doc.at("tolerances");
    reject_unknown(j, {"residual", "dedupe"}, "tolerances");
    if (j.contains("residual")) config.tolerances.residual = number_at(j, "residual");
    if (j.contains("dedupe")) config.tolerances.dedupe = number_at(j, "dedupe");
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
  RunConfig config;
  try {
    apply_json(config, json::parse(in));
  } catch (const json::exception& e) {
    throw std::invalid_argument("config file '" + path + "': " + e.what());
  }
  return config;
}

void validate(const RunConfig& config) {
  validate(config.channel);
  if (config.interaction.empty()) throw std::invalid_argument("no interaction given");
  validate(SearchRegion{min_search_re(config.channel), config.search.re_max, config.im_min(), 0.0}, config.channel);
  if (!(config.tolerances.residual > 0.0) || !(config.tolerances.dedupe > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
}

PoleSeries compute_series(const RunConfig& config, std::size_t index) {
  const GpiParams& p = config.interaction.at(index);
  const Channel& ch = config.channel;
  PoleSeries series{p, classify(p), is_separated(p), {}};

  if (series.separated) {
    const auto roots = real_axis_roots(p, ch, config.search.re_max);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      PoleRow row;
      row.n = static_cast<int>(i);
      row.k = {roots[i], 0.0};
      row.residual = std::abs(det_lambda(p, ch, row.k));
      row.energy_width = 0.0;
      row.embedded = true;
      row.series = static_cast<int>(index);
      series.rows.push_back(row);
    }
    return series;
  }

  const SearchRegion region{min_search_re(ch), config.search.re_max, config.im_min(), 0.0};
  const PoleSearchOptions options{config.tolerances.residual, config.tolerances.dedupe, 40};
  for (const Resonance& pole : find_poles(p, ch, region, options)) {
    PoleRow row;
    row.n = pole.index;
    row.k = pole.k;
    row.residual = pole.residual;
    row.energy_width = 2.0 * std::abs(pole.k.real() * pole.k.imag());
    row.series = static_cast<int>(index);
    if (const auto pred = predict(p, ch, pole.index)) {
      row.k_pred = pred->k_pred;
      row.abs_err = std::abs(pole.k - pred->k_pred);
      row.scaled_err = row.abs_err / pred->error_scale;
    }
    series.rows.push_back(row);
  }
  return series;
}

std::string write_pole_csv(const std::vector<PoleRow>& rows) {
  std::string out;
  for (std::size_t i = 0; i < kCsvHeader.size(); ++i) out += (i ? "," : "") + kCsvHeader[i];
  out += "\r\n";
  for (const PoleRow& r : rows) {
    out += std::to_string(r.n) + "," + fmt17(r.k.real()) + "," + fmt17(r.k.imag()) + "," + fmt17(r.residual) + "," +
           fmt17(r.k_pred.real()) + "," + fmt17(r.k_pred.imag()) + "," + fmt17(r.abs_err) + "," +
           fmt17(r.scaled_err) + "," + fmt17(r.energy_width) + "," + (r.embedded ? "true" : "false") + "," +
           std::to_string(r.series) + "\r\n";
  }
  return out;
}

std::vector<PoleRow> parse_pole_csv(std::string_view text) {
  std::vector<PoleRow> rows;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (!header_seen) {
      if (fields != kCsvHeader) throw std::invalid_argument("unexpected CSV header");
      header_seen = true;
      continue;
    }
    if (fields.size() != kCsvHeader.size()) throw std::invalid_argument("CSV row has the wrong number of fields");
    PoleRow r;
    r.n = static_cast<int>(parse_double(fields[0], "n"));
    r.k = {csv_number(fields[1]), csv_number(fields[2])};
    r.residual = csv_number(fields[3]);
    r.k_pred = {csv_number(fields[4]), csv_number(fields[5])};
    r.abs_err = csv_number(fields[6]);
    r.scaled_err = csv_number(fields[7]);
    r.energy_width = csv_number(fields[8]);
    if (fields[9] != "true" && fields[9] != "false") throw std::invalid_argument("embedded must be true or false");
    r.embedded = fields[9] == "true";
    r.series = static_cast<int>(parse_double(fields[10], "series"));
    rows.push_back(r);
  }
  if (!header_seen) throw std::invalid_argument("CSV header row missing");
  return rows;
}

std::string render_svg(const std::vector<PoleSeries>& series) {
  constexpr double width = 800.0, height = 500.0;
  constexpr double left = 70.0, right = 30.0, top = 40.0, bottom = 60.0;
  double re_hi = 1.0, im_lo = -1.0;
  for (const auto& s : series) {
    for (const auto& r : s.rows) {
      re_hi = std::max(re_hi, r.k.real());
      im_lo = std::min(im_lo, r.k.imag());
    }
  }
  re_hi *= 1.05;
  im_lo *= 1.05;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  auto px = [&](double re) { return left + plot_w * re / re_hi; };
  auto py = [&](double im) { return top + plot_h * im / im_lo; };

  std::ostringstream os;
  os << std::setprecision(6);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
     << "<title>Resonances in the momentum plane</title>\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

  // Axes: the real axis at the top of the plot, Im k grows downward on the page.
  os << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
     << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left + plot_w << "\" y2=\"" << top << "\"/>\n"
     << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h << "\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double re = re_hi * i / 5.0;
    const double im = im_lo * i / 5.0;
    os << "<line x1=\"" << px(re) << "\" y1=\"" << top - 4 << "\" x2=\"" << px(re) << "\" y2=\"" << top << "\"/>\n"
       << "<line x1=\"" << left - 4 << "\" y1=\"" << py(im) << "\" x2=\"" << left << "\" y2=\"" << py(im) << "\"/>\n";
  }
  os << "</g>\n<g class=\"labels\" font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double re = re_hi * i / 5.0;
    const double im = im_lo * i / 5.0;
    os << "<text x=\"" << px(re) << "\" y=\"" << top - 8 << "\" text-anchor=\"middle\">" << fmt6(re) << "</text>\n"
       << "<text x=\"" << left - 8 << "\" y=\"" << py(im) + 4 << "\" text-anchor=\"end\">" << fmt6(im) << "</text>\n";
  }
  os << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 20 << "\" text-anchor=\"middle\">Re k</text>\n"
     << "<text x=\"18\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
     << top + plot_h / 2 << ")\">Im k</text>\n</g>\n";

  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  constexpr double arm = 4.0;
  for (std::size_t si = 0; si < series.size(); ++si) {
    const PoleSeries& s = series[si];
    os << "<g class=\"series\" data-series=\"" << si << "\" data-class=\"" << to_string(s.gpi_class)
       << "\" stroke=\"" << kColors[si % 5] << "\" stroke-width=\"1.2\">\n";
    for (const PoleRow& r : s.rows) {
      const double x = px(r.k.real());
      const double y = py(r.k.imag());
      os << "<g class=\"pole\" data-n=\"" << r.n << "\" data-re=\"" << fmt17(r.k.real()) << "\" data-im=\""
         << fmt17(r.k.imag()) << "\">";
      const bool plus = s.gpi_class != GpiClass::Intermediate;
      const bool cross = s.gpi_class != GpiClass::Delta;
      if (plus) {
        os << "<line x1=\"" << x - arm << "\" y1=\"" << y << "\" x2=\"" << x + arm << "\" y2=\"" << y << "\"/>"
           << "<line x1=\"" << x << "\" y1=\"" << y - arm << "\" x2=\"" << x << "\" y2=\"" << y + arm << "\"/>";
      }
      if (cross) {
        const double d = plus ? arm * 0.75 : arm;
        os << "<line x1=\"" << x - d << "\" y1=\"" << y - d << "\" x2=\"" << x + d << "\" y2=\"" << y + d << "\"/>"
           << "<line x1=\"" << x - d << "\" y1=\"" << y + d << "\" x2=\"" << x + d << "\" y2=\"" << y - d << "\"/>";
      }
      os << "</g>\n";
    }
    os << "</g>\n";
  }

  os << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t si = 0; si < series.size(); ++si) {
    os << "<text x=\"" << width - right - 10 << "\" y=\"" << top + plot_h - 10 - 16.0 * (series.size() - 1 - si)
       << "\" text-anchor=\"end\" fill=\"" << kColors[si % 5] << "\">"
       << (series[si].gpi_class == GpiClass::Delta          ? "+ "
           : series[si].gpi_class == GpiClass::Intermediate ? "x "
                                                            : "* ")
       << class_label(series[si].gpi_class) << ": " << describe(series[si].interaction) << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string cmd_classify(const GpiParams& p) {
  std::ostringstream os;
  os << std::setprecision(10);
  const GpiClass cls = classify(p);
  const bool separated = is_separated(p);
  os << class_label(cls) << "; " << (separated ? "separated: embedded eigenvalues" : "not separated") << "\n";
  os << "interaction: " << describe(p) << "\n";
  const UnitaryForm u = to_unitary(p);
  os << "unitary form: xi=" << u.xi << " u1=" << format_complex(u.u1) << " u2=" << format_complex(u.u2)
     << " (class " << to_string(classify_unitary(u)) << ")\n";
  try {
    const TransferForm t = to_transfer(p);
    os << "transfer form: chi=" << t.chi << " a=" << t.a << " b=" << t.b << " c=" << t.c << " d=" << t.d << "\n";
  } catch (const SeparatedInteraction&) {
    os << "transfer form: none (SeparatedInteraction: inside and outside decouple)\n";
  }
  if (p.gamma.imag() != 0.0) os << "real-gamma equivalent: " << describe(canonical_real_gamma(p)) << "\n";
  return os.str();
}

PolesReport cmd_poles(const RunConfig& config) {
  validate(config);
  PolesReport report;
  std::vector<PoleRow> all;
  for (std::size_t i = 0; i < config.interaction.size(); ++i) {
    report.series.push_back(compute_series(config, i));
    const auto& rows = report.series.back().rows;
    all.insert(all.end(), rows.begin(), rows.end());
  }
  report.csv = write_pole_csv(all);
  if (!config.outputs.svg_path.empty()) {
    report.svg = render_svg(report.series);
    write_file(config.outputs.svg_path, report.svg);
  }
  if (!config.outputs.csv_path.empty()) write_file(config.outputs.csv_path, report.csv);
  return report;
}

std::string cmd_compare(const RunConfig& config) {
  validate(config);
  std::ostringstream os;
  for (std::size_t i = 0; i < config.interaction.size(); ++i) {
    const GpiParams& p = config.interaction[i];
    os << "# " << class_label(classify(p)) << " " << describe(p) << " l=" << config.channel.l
       << " R=" << config.channel.radius << "\n";
    if (is_separated(p)) {
      os << "separated: embedded eigenvalues, no resonances\n";
      continue;
    }
    const SearchRegion region{min_search_re(config.channel), config.search.re_max, config.im_min(), 0.0};
    const PoleSearchOptions options{config.tolerances.residual, config.tolerances.dedupe, 40};
    const auto rows = compare(find_poles(p, config.channel, region, options), p, config.channel);
    if (rows.empty()) {
      os << "no resonances\n";
      continue;
    }
    os << std::setw(6) << "n" << std::setw(16) << "re_found" << std::setw(16) << "im_found" << std::setw(16)
       << "re_pred" << std::setw(16) << "im_pred" << std::setw(14) << "abs_err" << std::setw(14) << "scaled_err"
       << "\n";
    os << std::setprecision(8);
    for (const auto& r : rows) {
      os << std::setw(6) << r.index << std::setw(16) << r.k_found.real() << std::setw(16) << r.k_found.imag()
         << std::setw(16) << r.k_pred.real() << std::setw(16) << r.k_pred.imag() << std::setw(14) << r.abs_err
         << std::setw(14) << r.scaled_err << "\n";
    }
    const int median = rows[rows.size() / 2].index;
    double worst = 0.0;
    for (const auto& r : rows) {
      if (r.index >= median) worst = std::max(worst, r.scaled_err);
    }
    os << "summary: " << rows.size() << " poles; max scaled_err over n >= " << median << ": " << worst << "\n";
  }
  return os.str();
}

}  // namespace winter

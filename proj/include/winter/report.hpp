#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "winter/asymptotics.hpp"
#include "winter/gpi_params.hpp"
#include "winter/polefinder.hpp"
#include "winter/riccati.hpp"

namespace winter {

// Parses `a+bi` literals: "1+1i", "2i", "-1", "1-0.5i", "i", "-3e-2+1e1i".
cplx parse_complex(std::string_view text);
std::string format_complex(cplx z);

// Parses "alpha=50,beta=0,gamma=1+1i"; omitted keys stay zero.
GpiParams parse_interaction(std::string_view text);

struct SearchSettings {
  double re_max = 40.0;
  std::optional<double> im_min;  // nullopt means "auto"
};

struct OutputSettings {
  std::string csv_path;  // empty: CSV goes to stdout
  std::string svg_path;  // empty: no figure
  bool table = false;
};

struct Tolerances {
  double residual = 1e-9;
  double dedupe = 1e-8;
};

struct RunConfig {
  std::vector<GpiParams> interaction{GpiParams{}};
  Channel channel;
  SearchSettings search;
  OutputSettings outputs;
  Tolerances tolerances;

  [[nodiscard]] double im_min() const;
};

// Fills `config` from JSON; keys absent in the document keep their current values.
// Throws std::invalid_argument on malformed documents.
void apply_json(RunConfig& config, const nlohmann::json& doc);
RunConfig load_config_file(const std::string& path);

// Throws std::invalid_argument when the channel or search window is not admissible.
void validate(const RunConfig& config);

// One CSV line. Prediction fields are NaN when no prediction exists
// (embedded eigenvalues); the CSV writes them as empty fields.
struct PoleRow {
  int n = 0;
  cplx k;
  double residual = 0.0;
  cplx k_pred{std::nan(""), std::nan("")};
  double abs_err = std::nan("");
  double scaled_err = std::nan("");
  double energy_width = 0.0;  // 2 |Re k Im k|
  bool embedded = false;
  int series = 0;  // position of the interaction in RunConfig::interaction

  friend bool operator==(const PoleRow&, const PoleRow&) = default;
};

struct PoleSeries {
  GpiParams interaction;
  GpiClass gpi_class = GpiClass::Delta;
  bool separated = false;
  std::vector<PoleRow> rows;
};

inline const std::vector<std::string> kCsvHeader{"n",       "re_k",       "im_k",         "residual",
                                                  "re_pred", "im_pred",    "abs_err",      "scaled_err",
                                                  "energy_width", "embedded", "series"};

PoleSeries compute_series(const RunConfig& config, std::size_t index);

std::string write_pole_csv(const std::vector<PoleRow>& rows);
std::vector<PoleRow> parse_pole_csv(std::string_view text);

// Scatter of (Re k, Im k); + for delta, x for intermediate, * for delta-prime.
std::string render_svg(const std::vector<PoleSeries>& series);

std::string cmd_classify(const GpiParams& p);

struct PolesReport {
  std::vector<PoleSeries> series;
  std::string csv;
  std::string svg;
};

// Computes every series and writes the CSV/SVG files named in config.outputs.
PolesReport cmd_poles(const RunConfig& config);

std::string cmd_compare(const RunConfig& config);

}  // namespace winter

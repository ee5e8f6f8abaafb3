#ifndef FFLAB_REPORT_HPP
#define FFLAB_REPORT_HPP

#include <string>

#include <json.hpp>

#include "fflab/energy.hpp"
#include "fflab/rmf.hpp"

namespace fflab {

/// JSON report of a set's energy counts:
/// {tag, q, N, params, setSize, total, diagonal, offDiagonal, m4,
///  sizeConditionSatisfied, regimeWarning}.
nlohmann::json energy_report_json(const PolySet& set, const EnergyReport& rep);

/// Versioned JSON of the Monte Carlo report (per-trial samples excluded; those go to
/// the optional CSV).
nlohmann::json clt_report_json(const CltReport& rep);

nlohmann::json condition_report_json(const ConditionReport& rep);

/// Formats a double with full round-trip precision, stable across runs.
std::string format_double(double v);

/// Per-trial CSV: header "trial,re_z,im_z" then one row per trial.
std::string trial_csv(const CltReport& rep);

/// Writes text to path, creating parent directories as needed.
void write_file(const std::string& path, const std::string& text);

}  // namespace fflab

#endif

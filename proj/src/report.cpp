#include "fflab/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace fflab {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json energy_report_json(const PolySet& set, const EnergyReport& rep) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [key, value] : set.params) params[key] = value;
  return nlohmann::json{
      {"tag", family_name(set.tag)},
      {"q", set.field->q()},
      {"N", set.N},
      {"params", params},
      {"setSize", rep.set_size},
      {"total", rep.total},
      {"diagonal", rep.diagonal},
      {"offDiagonal", rep.off_diagonal},
      {"m4", rep.m4()},
      {"sizeConditionSatisfied", size_condition_satisfied(set)},
      {"regimeWarning", set.regime_warning},
  };
}

nlohmann::json clt_report_json(const CltReport& rep) {
  nlohmann::json ecf = nlohmann::json::array();
  for (const auto& pt : rep.ecf) {
    ecf.push_back({{"t1", pt.t1},
                   {"t2", pt.t2},
                   {"empRe", pt.emp_re},
                   {"empIm", pt.emp_im},
                   {"target", pt.target}});
  }
  return nlohmann::json{
      {"schema", "cltreport/1"},
      {"setSize", rep.set_size},
      {"trials", rep.trials},
      {"seed", rep.seed},
      {"m2Hat", rep.m2_hat},
      {"seM2", rep.se_m2},
      {"m4Hat", rep.m4_hat},
      {"seM4", rep.se_m4},
      {"energyTotal", rep.energy_total},
      {"m4Exact", rep.m4_exact},
      {"ksRe", rep.ks_re},
      {"ksIm", rep.ks_im},
      {"ksThreshold99", rep.ks_threshold_99},
      {"ecf", ecf},
      {"blockSecondMoments", rep.block_second_moments},
      {"m2Gate", rep.m2_gate},
      {"m4Gate", rep.m4_gate},
      {"ksGate", rep.ks_gate},
  };
}

nlohmann::json condition_report_json(const ConditionReport& rep) {
  return nlohmann::json{
      {"sizeA", rep.size_a},
      {"sizeS", rep.size_s},
      {"excludedRatio", rep.excluded_ratio},
      {"offDiagonal", rep.off_diagonal},
      {"offDiagonalRatio", rep.off_diagonal_ratio},
      {"maxBlock", rep.max_block},
      {"maxBlockRatio", rep.max_block_ratio},
      {"sizeFloor", rep.floor},
      {"sizeConditionSatisfied", rep.size_condition},
  };
}

std::string trial_csv(const CltReport& rep) {
  std::string out = "trial,re_z,im_z\n";
  for (std::size_t t = 0; t < rep.trial_z.size(); ++t) {
    out += std::to_string(t);
    out += ',';
    out += format_double(rep.trial_z[t].first);
    out += ',';
    out += format_double(rep.trial_z[t].second);
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << text;
}

}  // namespace fflab

#include "linematch/transcript.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "linematch/error.hpp"
#include "linematch/line_state.hpp"

namespace linematch {
namespace {

using ordered_json = nlohmann::ordered_json;

template <class T>
ordered_json opt_json(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json trigger_json(const TriggerRecord& r) {
  ordered_json simulated_p = ordered_json::array();
  for (const auto& p : r.simulated_p_right) simulated_p.push_back(opt_json(p));
  return ordered_json{{"t", r.t},
                      {"assigned_server", r.assigned_server},
                      {"assigned_cost", r.assigned_cost},
                      {"imaginary_move", r.imaginary_move},
                      {"imaginary_cost", r.imaginary_cost},
                      {"simulated_assignments", r.simulated_assignments},
                      {"simulated_imaginary_moves", r.simulated_imaginary_moves},
                      {"simulated_p_right", simulated_p},
                      {"simulated_cost", r.simulated_cost}};
}

std::string csv_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

template <class T>
std::string csv_opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return csv_number(*v);
  } else {
    return std::to_string(*v);
  }
}

}  // namespace

std::vector<PhaseRecord> build_phases(const std::vector<StepTrace>& steps,
                                      const std::vector<TriggerRecord>& triggers,
                                      const std::vector<double>& servers) {
  std::vector<PhaseRecord> phases(1);
  phases[0].index = 0;
  phases[0].z_exponent = steps.empty() ? 0 : steps.front().z_exponent_before;
  std::size_t next_trigger = 0;
  for (const StepTrace& s : steps) {
    if (s.trigger) {
      if (next_trigger >= triggers.size() || triggers[next_trigger].t != s.t) {
        throw Error(ErrorCode::BadParams, "trigger records do not match the steps");
      }
      PhaseRecord p;
      p.index = phases.size();
      p.z_exponent = s.z_exponent_after;
      p.opening_trigger = triggers[next_trigger++];
      phases.push_back(std::move(p));
      continue;
    }
    PhaseRecord& p = phases.back();
    p.steps.push_back(s.t);
    p.assigned_cost += s.cost;
    if (s.imaginary_server) p.imaginary_cost += std::abs(s.request - servers[*s.imaginary_server]);
  }
  for (PhaseRecord& p : phases) {
    const double z = pow10(p.z_exponent);
    p.tau = 0;
    for (const StepTrace& s : steps) {
      if (s.opt_to_date < z) p.tau = s.t;
    }
  }
  return phases;
}

double competitive_ratio(double online_cost, double opt) {
  if (opt <= 0.0) return 1.0;
  return online_cost / opt;
}

std::string transcript_to_json(const RunTranscript& tr) {
  ordered_json steps = ordered_json::array();
  for (const StepTrace& s : tr.steps) {
    ordered_json j{{"t", s.t},
                   {"request", s.request},
                   {"case", s.case_id},
                   {"server", s.server},
                   {"server_position", s.server_position},
                   {"cost", s.cost},
                   {"trigger", s.trigger},
                   {"z_exponent_before", s.z_exponent_before},
                   {"z_exponent_after", s.z_exponent_after},
                   {"opt_to_date", s.opt_to_date},
                   {"imaginary_server", opt_json(s.imaginary_server)},
                   {"corrective_target", opt_json(s.corrective_target)},
                   {"y_left", opt_json(s.y_left)},
                   {"y_right", opt_json(s.y_right)},
                   {"mimic_point", opt_json(s.mimic_point)},
                   {"p_right", opt_json(s.p_right)},
                   {"draws", s.draws}};
    if (s.potential) {
      const PotentialRecord& p = *s.potential;
      j["potential"] = ordered_json{{"d_before", p.d_before}, {"d_after", p.d_after},
                                    {"d_sigma", p.d_sigma},   {"d_gamma", p.d_gamma},
                                    {"g_before", p.g_before}, {"g_after", p.g_after}};
    }
    if (s.before) {
      j["before"] = ordered_json{{"available", s.before->available}, {"imaginary", s.before->imaginary}};
    }
    steps.push_back(std::move(j));
  }
  ordered_json phases = ordered_json::array();
  for (const PhaseRecord& p : tr.phases) {
    phases.push_back(ordered_json{
        {"index", p.index},
        {"z_exponent", p.z_exponent},
        {"tau", p.tau},
        {"steps", p.steps},
        {"assigned_cost", p.assigned_cost},
        {"imaginary_cost", p.imaginary_cost},
        {"opening_trigger", p.opening_trigger ? trigger_json(*p.opening_trigger) : ordered_json(nullptr)}});
  }
  ordered_json out{{"algorithm", tr.algorithm},
                   {"seed", tr.seed},
                   {"servers", tr.servers},
                   {"requests", tr.requests},
                   {"online_cost", tr.online_cost},
                   {"opt", tr.opt},
                   {"ratio", tr.ratio},
                   {"steps", steps},
                   {"phases", phases}};
  return out.dump(2) + "\n";
}

std::string transcript_to_csv(const RunTranscript& tr) {
  std::ostringstream os;
  os << "t,request,case,server,server_position,cost,trigger,z_exponent_before,z_exponent_after,"
        "opt_to_date,imaginary_server,p_right,y_left,y_right,draws,g_before,g_after\n";
  for (const StepTrace& s : tr.steps) {
    os << s.t << ',' << csv_number(s.request) << ',' << s.case_id << ',' << s.server << ','
       << csv_number(s.server_position) << ',' << csv_number(s.cost) << ',' << (s.trigger ? 1 : 0) << ','
       << s.z_exponent_before << ',' << s.z_exponent_after << ',' << csv_number(s.opt_to_date) << ','
       << csv_opt(s.imaginary_server) << ',' << csv_opt(s.p_right) << ',' << csv_opt(s.y_left) << ','
       << csv_opt(s.y_right) << ',' << s.draws << ',';
    if (s.potential) os << csv_number(s.potential->g_before) << ',' << csv_number(s.potential->g_after);
    else os << ',';
    os << '\n';
  }
  return os.str();
}

}  // namespace linematch

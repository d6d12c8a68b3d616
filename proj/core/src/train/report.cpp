#include "robustprep/train/report.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace robustprep::train {

std::string_view phase_name(Phase phase) {
    return phase == Phase::noise_free ? "noise_free" : "noise_aware";
}

const StepRecord& TrainReport::last() const {
    if (steps.empty()) {
        throw std::runtime_error("TrainReport: no steps recorded");
    }
    return steps.back();
}

void TrainReport::append(const TrainReport& other) {
    const long offset = steps.empty() ? 0 : steps.back().step + 1;
    const std::uint64_t shot_offset = device_shots;
    for (StepRecord record : other.steps) {
        record.step += offset;
        record.cum_device_shots += shot_offset;
        steps.push_back(record);
    }
    final_params = other.final_params;
    trajectory.insert(trajectory.end(), other.trajectory.begin(), other.trajectory.end());
    device_setting_executions += other.device_setting_executions;
    device_shots += other.device_shots;
    degenerate_steps += other.degenerate_steps;
}

void TrainReport::write_csv(std::ostream& out) const {
    out << "step,phase,loss,sim_fidelity,dev_fidelity,coherent_err,incoherent_p,"
           "cum_device_shots\n";
    out << std::setprecision(17);
    for (const auto& record : steps) {
        out << record.step << ',' << phase_name(record.phase) << ',' << record.loss << ','
            << record.sim_fidelity << ',';
        if (record.dev_fidelity) {
            out << *record.dev_fidelity;
        }
        out << ',';
        if (record.coherent_error) {
            out << *record.coherent_error;
        }
        out << ',';
        if (record.incoherent_p) {
            out << *record.incoherent_p;
        }
        out << ',' << record.cum_device_shots << '\n';
    }
}

std::string TrainReport::summary_json(int indent) const {
    nlohmann::json j;
    j["steps"] = steps.size();
    j["device_setting_executions"] = device_setting_executions;
    j["device_shots"] = device_shots;
    j["degenerate_steps"] = degenerate_steps;
    if (!steps.empty()) {
        const auto& final_step = steps.back();
        j["final"]["loss"] = final_step.loss;
        j["final"]["sim_fidelity"] = final_step.sim_fidelity;
        if (final_step.dev_fidelity) {
            j["final"]["dev_fidelity"] = *final_step.dev_fidelity;
        }
        if (final_step.coherent_error) {
            j["final"]["coherent_error"] = *final_step.coherent_error;
        }
        if (final_step.incoherent_p) {
            j["final"]["incoherent_p"] = *final_step.incoherent_p;
        }
    }
    j["final_params"] = final_params;
    return j.dump(indent);
}

}  // namespace robustprep::train

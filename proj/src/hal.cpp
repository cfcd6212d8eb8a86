#include "qcs/hal.hpp"

namespace qcs::hal {

Controller::Controller(const DeviceConfig& device) : device_(device), cluster_(device) {}

void Controller::configure(const pulse::CompiledProgram& compiled) {
    cluster_.load(compiled);
    program_ticks_ = compiled.total_ticks;
    started_ = false;
}

void Controller::start() {
    cluster_.sync_start();
    started_ = true;
}

void Controller::advance(pulse::Tick n_ticks) {
    if (!started_) throw EngineError("controller not started");
    cluster_.run(n_ticks);
}

void Controller::run_to_end() {
    if (!started_) throw EngineError("controller not started");
    const pulse::Tick now = cluster_.engine(0).current_tick();
    if (now < program_ticks_) cluster_.run(program_ticks_ - now);
}

ExecutionEngine& Controller::owner_of(std::uint32_t channel) {
    const std::uint32_t unit = device_.unit_of(channel);
    if (unit >= cluster_.size()) {
        throw EngineError("channel " + std::to_string(channel) + " out of range");
    }
    return cluster_.engine(unit);
}

SampleTrace Controller::record(std::uint32_t channel, pulse::Tick window, std::uint32_t budget) {
    if (!started_) throw EngineError("controller not started");
    return owner_of(channel).capture(channel, window, budget);
}

std::vector<SampleTrace> Controller::collect_traces() { return cluster_.take_completed_captures(); }

const std::vector<pulse::Tick>& Controller::play_in_events(std::uint32_t channel) {
    return owner_of(channel).play_in_events(channel);
}

const std::vector<pulse::Tick>& Controller::play_out_events(std::uint32_t channel) {
    return owner_of(channel).play_out_events(channel);
}

void Controller::stop() {
    for (std::uint32_t unit = 0; unit < cluster_.size(); ++unit) {
        cluster_.engine(unit).reset();
    }
    started_ = false;
}

}  // namespace qcs::hal

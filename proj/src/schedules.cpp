#include "qjump/schedules.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qjump/model.hpp"

namespace qjump {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

double JumpSchedule::total_time() const {
    return std::accumulate(taus.begin(), taus.end(), 0.0);
}

JumpSchedule make_jump_schedule(int n_pulses, double omega) {
    if (n_pulses < 1)
        throw InvalidPulseCount("n_pulses must be >= 1, got " + std::to_string(n_pulses));
    if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
    JumpSchedule s;
    s.omega = omega;
    s.thetas.reserve(n_pulses);
    const double tau = kPi / omega;
    for (int j = 1; j <= n_pulses; ++j) {
        s.thetas.push_back((2.0 * j - 1.0) * kPi / (4.0 * n_pulses));
        s.taus.push_back(tau);
    }
    return s;
}

JumpSchedule stretch_schedule(const JumpSchedule& s, double total_time) {
    if (total_time < 0.0) throw std::invalid_argument("total_time must be >= 0");
    const double current = s.total_time();
    if (!(current > 0.0)) throw std::invalid_argument("schedule has zero duration");
    JumpSchedule out = s;
    const double factor = total_time / current;
    for (double& tau : out.taus) tau *= factor;
    return out;
}

std::vector<double> cumulative_dwell(const JumpSchedule& s) {
    std::vector<double> cum(s.taus.size() + 1, 0.0);
    std::partial_sum(s.taus.begin(), s.taus.end(), cum.begin() + 1);
    return cum;
}

SignFunction::SignFunction(const JumpSchedule& s) : boundaries_(s.thetas) {
    if (boundaries_.empty()) throw InvalidPulseCount("schedule has no pulses");
    if (!std::is_sorted(boundaries_.begin(), boundaries_.end()))
        throw std::invalid_argument("schedule angles must be ascending");
}

int SignFunction::operator()(double theta) const {
    const auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), theta);
    const auto j = std::distance(boundaries_.begin(), it);
    return (j % 2 == 0) ? 1 : -1;
}

long long SignFunction::integral_quarter_units() const {
    // Region lengths in units of pi/(4N): 1, 2, 2, ..., 2, 1.
    const long long n = static_cast<long long>(boundaries_.size());
    long long acc = 1;
    for (long long j = 1; j < n; ++j) acc += (j % 2 == 0) ? 2 : -2;
    acc += (n % 2 == 0) ? 1 : -1;
    return acc;
}

StirapConfig stirap_defaults(double omega, double total_time, double delta) {
    if (!(total_time > 0.0)) throw std::invalid_argument("total_time must be positive");
    if (omega < 0.0) throw std::invalid_argument("omega must be >= 0");
    StirapConfig c;
    c.omega = omega;
    c.total_time = total_time;
    c.delay = total_time / 10.0;
    c.width = total_time / 6.0;
    c.delta = delta;
    c.dt = total_time / 2000.0;
    return c;
}

std::pair<double, double> stirap_envelopes(const StirapConfig& c, double t) {
    const double slack = 1e-12 * std::max(1.0, c.total_time);
    if (t < -slack || t > c.total_time + slack)
        throw TimeOutOfRange("t = " + std::to_string(t) + " outside [0, " +
                             std::to_string(c.total_time) + "]");
    const double peak = 2.0 * c.omega;
    const double mid = 0.5 * c.total_time;
    const double as = (t - (mid - c.delay)) / c.width;
    const double ap = (t - (mid + c.delay)) / c.width;
    return {peak * std::exp(-ap * ap), peak * std::exp(-as * as)};
}

ComplexMatrix hamiltonian_stirap(const StirapConfig& c, double t) {
    const auto [omega_p, omega_s] = stirap_envelopes(c, t);
    ComplexMatrix h = ComplexMatrix::Zero();
    h(kIdx0, kIdxMinus) = 0.5 * omega_p;
    h(kIdxMinus, kIdx0) = 0.5 * omega_p;
    h(kIdx0, kIdxPlus) = 0.5 * omega_s;
    h(kIdxPlus, kIdx0) = 0.5 * omega_s;
    h(kIdxMinus, kIdxMinus) = c.delta;
    h(kIdxPlus, kIdxPlus) = -c.delta;
    return h;
}

}  // namespace qjump

#include "riskfuzz/traffic.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>

namespace riskfuzz {

void TimeSeries::validate() const {
    if (bin_width <= 0.0) {
        throw DomainError("bin width must be positive");
    }
    for (double v : samples) {
        if (v < 0.0) {
            throw DomainError("traffic samples must be nonnegative");
        }
    }
}

TimeSeries binning(const std::vector<PacketRecord>& packets, double bin_width, double span,
                   double origin) {
    if (bin_width <= 0.0) {
        throw DomainError("bin width must be positive");
    }
    double q = span / bin_width;
    double qr = std::round(q);
    if (std::abs(q - qr) > 1e-9 || qr < 1.0) {
        throw DomainError("observation span must be a positive integer multiple of the bin width");
    }
    TimeSeries ts;
    ts.bin_width = bin_width;
    ts.origin = origin;
    ts.samples.assign(static_cast<std::size_t>(qr), 0.0);
    for (const auto& p : packets) {
        double rel = p.timestamp - origin;
        if (rel < 0.0 || rel >= span) {
            continue;
        }
        // half-open bins: an edge timestamp counts in the later bin
        std::size_t idx = static_cast<std::size_t>(std::floor(rel / bin_width + 1e-12));
        if (idx < ts.samples.size()) {
            ts.samples[idx] += p.size;
        }
    }
    return ts;
}

TimeSeries smooth(const TimeSeries& series, std::size_t window) {
    series.validate();
    const std::size_t q = series.samples.size();
    if (window % 2 == 0) {
        throw DomainError("smoothing window must be odd");
    }
    if (window < 3 || window > q) {
        throw DomainError("smoothing window must lie in [3, series length]");
    }
    const std::size_t half = window / 2;
    TimeSeries out;
    out.bin_width = series.bin_width;
    out.origin = series.origin + series.bin_width * static_cast<double>(half);
    out.samples.reserve(q - window + 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < window; ++i) {
        acc += series.samples[i];
    }
    out.samples.push_back(acc / static_cast<double>(window));
    for (std::size_t i = window; i < q; ++i) {
        acc += series.samples[i] - series.samples[i - window];
        out.samples.push_back(acc / static_cast<double>(window));
    }
    return out;
}

Spectrum spectrum(const std::vector<double>& samples) {
    const std::size_t n = samples.size();
    if (n < 2) {
        throw DomainError("spectrum needs at least 2 samples");
    }
    Spectrum sp;
    sp.amplitudes.resize(n);
    sp.power.resize(n);
    static std::mutex plan_mutex; // FFTW planning is not thread-safe
    std::vector<double> in = samples;
    std::vector<fftw_complex> out(n / 2 + 1);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), out.data(), FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_destroy_plan(plan);
    }
    for (std::size_t k = 0; k <= n / 2; ++k) {
        sp.amplitudes[k] = {out[k][0], out[k][1]};
    }
    for (std::size_t k = n / 2 + 1; k < n; ++k) {
        sp.amplitudes[k] = std::conj(sp.amplitudes[n - k]);
    }
    for (std::size_t k = 0; k < n; ++k) {
        sp.power[k] = std::norm(sp.amplitudes[k]);
    }
    return sp;
}

double fisher_g_pvalue(double g, std::size_t m) {
    if (m == 0) {
        return 1.0;
    }
    if (g <= 0.0) {
        return 1.0;
    }
    if (g >= 1.0) {
        return 0.0;
    }
    // P(G > g) = sum_{j=1..floor(1/g)} (-1)^(j-1) C(m, j) (1 - j g)^(m-1)
    double p = 0.0;
    double log_comb = 0.0; // log C(m, j), built incrementally
    const std::size_t jmax = std::min<std::size_t>(m, static_cast<std::size_t>(1.0 / g));
    for (std::size_t j = 1; j <= jmax; ++j) {
        log_comb += std::log(static_cast<double>(m - j + 1)) - std::log(static_cast<double>(j));
        double base = 1.0 - static_cast<double>(j) * g;
        if (base <= 0.0) {
            break;
        }
        double term = std::exp(log_comb + static_cast<double>(m - 1) * std::log(base));
        p += (j % 2 == 1) ? term : -term;
    }
    return std::clamp(p, 0.0, 1.0);
}

namespace {

double series_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) {
        s += x;
    }
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// centered moving average detrend; returns the residual (shorter by L - 1)
std::vector<double> detrend_by_moving_average(const std::vector<double>& x, std::size_t window) {
    const std::size_t half = window / 2;
    std::vector<double> out;
    if (window >= x.size() || window < 3) {
        return out;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < window; ++i) {
        acc += x[i];
    }
    out.push_back(x[half] - acc / static_cast<double>(window));
    for (std::size_t i = window; i < x.size(); ++i) {
        acc += x[i] - x[i - window];
        out.push_back(x[i - half] - acc / static_cast<double>(window));
    }
    return out;
}

} // namespace

std::vector<Cycle> detect_cycles(const TimeSeries& series, const CycleDetectionOptions& opts) {
    series.validate();
    const std::vector<double>& x = series.samples;
    const std::size_t n = x.size();
    std::vector<Cycle> cycles;
    if (n < 4) {
        return cycles;
    }
    // remove the mean so index 0 does not drown the ordinates
    std::vector<double> centered = x;
    double mu = series_mean(x);
    for (double& v : centered) {
        v -= mu;
    }
    Spectrum sp = spectrum(centered);
    const std::size_t m = (n - 1) / 2; // usable ordinates 1..m

    // peak picking: local maxima above mean + k * sigma of the ordinates
    double pm = 0.0, ps = 0.0;
    for (std::size_t k = 1; k <= m; ++k) {
        pm += sp.power[k];
    }
    pm /= static_cast<double>(m);
    for (std::size_t k = 1; k <= m; ++k) {
        ps += (sp.power[k] - pm) * (sp.power[k] - pm);
    }
    ps = std::sqrt(ps / static_cast<double>(m));
    const double gate = pm + opts.peak_sigma * ps;

    std::vector<std::size_t> peaks;
    for (std::size_t k = 1; k <= m; ++k) {
        double left = (k > 1) ? sp.power[k - 1] : 0.0;
        double right = (k < m) ? sp.power[k + 1] : 0.0;
        if (sp.power[k] > gate && sp.power[k] >= left && sp.power[k] >= right) {
            peaks.push_back(k);
        }
    }
    std::sort(peaks.begin(), peaks.end(),
              [&](std::size_t a, std::size_t b) { return sp.power[a] > sp.power[b]; });
    if (peaks.size() > opts.top_k) {
        peaks.resize(opts.top_k);
    }

    for (std::size_t k : peaks) {
        // detrend with a window of one period (odd-sized)
        std::size_t period = std::max<std::size_t>(3, (n + k / 2) / k);
        if (period % 2 == 0) {
            ++period;
        }
        std::vector<double> resid = detrend_by_moving_average(centered, period);
        if (resid.size() < 8) {
            resid = centered; // series too short to detrend; test as-is
        }
        Spectrum rsp = spectrum(resid);
        const std::size_t rn = resid.size();
        const std::size_t rm = (rn - 1) / 2;
        if (rm < 2) {
            continue;
        }
        // the candidate frequency shifts with the shorter residual length
        double target = static_cast<double>(k) * static_cast<double>(rn) / static_cast<double>(n);
        std::size_t rk = std::clamp<std::size_t>(
            static_cast<std::size_t>(std::llround(target)), 1, rm);
        // allow +-1 index drift to land on the residual peak
        for (std::size_t cand : {rk, rk > 1 ? rk - 1 : rk, rk < rm ? rk + 1 : rk}) {
            if (rsp.power[cand] > rsp.power[rk]) {
                rk = cand;
            }
        }
        double total = 0.0;
        for (std::size_t i = 1; i <= rm; ++i) {
            total += rsp.power[i];
        }
        if (total <= 0.0) {
            continue;
        }
        double g = rsp.power[rk] / total;
        double p = fisher_g_pvalue(g, rm);
        if (p > opts.significance) {
            continue;
        }
        Cycle c;
        c.frequency = k;
        c.period = static_cast<double>(n) / static_cast<double>(k);
        // fold the conjugate pair: a real cosine of amplitude A yields
        // |Y_k| = A * N / 2 at both k and N - k
        c.amplitude = 2.0 * std::abs(sp.amplitudes[k]) / static_cast<double>(n);
        c.phase = std::arg(sp.amplitudes[k]);
        c.p_value = p;
        cycles.push_back(c);
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const Cycle& a, const Cycle& b) { return a.frequency < b.frequency; });
    return cycles;
}

std::vector<double> forecast(const std::vector<Cycle>& cycles, double mean,
                             std::size_t analyzed_length, std::size_t from_bin,
                             std::size_t count) {
    if (analyzed_length < 2) {
        throw DomainError("forecast needs the analyzed series length");
    }
    std::vector<double> out(count, mean);
    for (std::size_t i = 0; i < count; ++i) {
        double t = static_cast<double>(from_bin + i);
        for (const Cycle& c : cycles) {
            double w = 2.0 * M_PI * static_cast<double>(c.frequency) /
                       static_cast<double>(analyzed_length);
            out[i] += c.amplitude * std::cos(w * t + c.phase);
        }
    }
    return out;
}

std::vector<AnomalyEvent> detect_anomaly(const TimeSeries& real, const std::vector<double>& predicted,
                                         double threshold, std::size_t window) {
    real.validate();
    if (threshold <= 0.0) {
        throw DomainError("anomaly threshold must be positive");
    }
    const std::size_t n = real.samples.size();
    if (predicted.size() != n) {
        throw DomainError("real and predicted series must cover the same bins");
    }
    if (window == 0 || window > n) {
        throw DomainError("smoothing window must lie in [1, series length]");
    }
    // trailing-window mean, shifting as data arrives
    std::vector<double> smoothed(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += real.samples[i];
        if (i >= window) {
            acc -= real.samples[i - window];
        }
        smoothed[i] = acc / static_cast<double>(std::min(window, i + 1));
    }
    std::vector<AnomalyEvent> events;
    std::optional<std::size_t> run_start;
    double run_peak = 0.0;
    auto close_run = [&](std::size_t end) {
        AnomalyEvent ev;
        ev.start_bin = *run_start;
        ev.end_bin = end;
        ev.deviation = run_peak;
        events.push_back(ev);
        run_start.reset();
        run_peak = 0.0;
    };
    for (std::size_t i = 0; i < n; ++i) {
        double dev = std::abs(smoothed[i] - predicted[i]);
        if (dev >= threshold) { // inclusive comparison
            if (!run_start) {
                run_start = i;
            }
            run_peak = std::max(run_peak, dev);
        } else if (run_start) {
            close_run(i - 1);
        }
    }
    if (run_start) {
        close_run(n - 1);
    }
    return events;
}

void fill_event_sources(std::vector<AnomalyEvent>& events, const TimeSeries& series,
                        const std::vector<PacketRecord>& packets) {
    for (AnomalyEvent& ev : events) {
        double t0 = series.origin + series.bin_width * static_cast<double>(ev.start_bin);
        double t1 = series.origin + series.bin_width * static_cast<double>(ev.end_bin + 1);
        std::set<std::string> sources;
        double volume = 0.0;
        for (const auto& p : packets) {
            if (p.timestamp >= t0 && p.timestamp < t1) {
                sources.insert(p.src);
                volume += p.size;
            }
        }
        ev.source_count = static_cast<double>(sources.size());
        ev.mean_source_volume = sources.empty() ? 0.0 : volume / static_cast<double>(sources.size());
        double window_bins = static_cast<double>(ev.end_bin - ev.start_bin + 1);
        ev.frequency = window_bins > 0.0 ? 1.0 / window_bins : 0.0;
    }
}

void grade_and_respond(AnomalyEvent& event, const RuleBase& grading,
                       const std::vector<ResponseRule>& responses, const ResponseContext& ctx,
                       const NormalizationCaps& caps) {
    auto norm = [](double v, double cap) {
        if (cap <= 0.0) {
            throw DomainError("normalization cap must be positive");
        }
        return std::clamp(v / cap, 0.0, 1.0);
    };
    std::map<std::string, InputValue> in;
    in["dV"] = norm(event.deviation, caps.deviation_cap);
    in["M"] = norm(event.frequency, caps.frequency_cap);
    in["I"] = norm(event.source_count, caps.source_cap);
    in["W"] = norm(event.mean_source_volume, caps.volume_cap);
    InferenceResult res = grading.infer(in);
    event.grade = res.best_label;
    event.grade_omega = res.omegas[res.best_index];
    event.grade_crisp = res.crisp;

    auto match = [](const std::string& pat, const std::string& v) { return pat == "*" || pat == v; };
    for (const auto& r : responses) {
        if (match(r.grade, event.grade) && match(r.locality, ctx.locality) &&
            match(r.direction, ctx.direction) && match(r.privilege, ctx.privilege)) {
            event.response = r.action;
            event.response_detail = r.detail;
            return;
        }
    }
    throw RuleBaseError("no response rule covers grade " + event.grade + " with context (" +
                        ctx.locality + ", " + ctx.direction + ", " + ctx.privilege + ")");
}

std::vector<PacketRecord> read_packet_log(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open packet log '" + path + "'");
    }
    std::vector<PacketRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = line.substr(0, line.find('#'));
        if (stripped.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        std::istringstream is(stripped);
        PacketRecord p;
        if (!(is >> p.timestamp >> p.src >> p.dst >> p.size >> p.direction)) {
            throw Error(path + ":" + std::to_string(lineno) + ": malformed packet record");
        }
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace riskfuzz

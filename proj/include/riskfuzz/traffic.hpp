#pragma once

#include "riskfuzz/fuzzy.hpp"
#include "riskfuzz/inference.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace riskfuzz {

/// One captured packet header record.
struct PacketRecord {
    double timestamp = 0.0; // epoch seconds
    std::string src;
    std::string dst;
    double size = 0.0; // bytes
    std::string direction; // "in" | "out"
};

/// Uniformly binned traffic volume.
struct TimeSeries {
    double bin_width = 1.0; // seconds
    double origin = 0.0;    // epoch seconds of the first bin edge
    std::vector<double> samples; // bytes per bin

    void validate() const;
};

/// Sums packet sizes into Q = span / bin_width half-open bins; a packet on a
/// bin edge counts in the later bin.
TimeSeries binning(const std::vector<PacketRecord>& packets, double bin_width, double span,
                   double origin = 0.0);

/// Centered moving average of odd length window; (window-1)/2 samples drop
/// from each end.
TimeSeries smooth(const TimeSeries& series, std::size_t window);

struct Spectrum {
    std::vector<std::complex<double>> amplitudes; // DFT bins 0..N-1
    std::vector<double> power;                    // |Y_n|^2
};

Spectrum spectrum(const std::vector<double>& samples);

struct Cycle {
    std::size_t frequency = 0; // DFT index over the analyzed length
    double period = 0.0;       // bins per repetition
    double amplitude = 0.0;    // bytes (cosine amplitude)
    double phase = 0.0;        // radians, in (-pi, pi]
    double p_value = 1.0;      // Fisher g-test significance after detrending
};

/// Fisher g-test p-value for the maximum periodogram ordinate among m
/// ordinates: P(g > g0) by the exact alternating series.
double fisher_g_pvalue(double g, std::size_t m);

struct CycleDetectionOptions {
    std::size_t top_k = 10;           // candidate peak cap
    double significance = 0.05;       // g-test level
    double peak_sigma = 3.0;          // local maxima above mean + k * sigma
};

/// Spectral peak picking, per-peak detrending by a period-length moving
/// average, and the Fisher g significance re-test.
std::vector<Cycle> detect_cycles(const TimeSeries& series, const CycleDetectionOptions& opts = {});

/// Sum of the recovered cosine components plus the series mean, evaluated at
/// bin index t over the original sampling grid (t may exceed the data).
std::vector<double> forecast(const std::vector<Cycle>& cycles, double mean,
                             std::size_t analyzed_length, std::size_t from_bin,
                             std::size_t count);

struct AnomalyEvent {
    std::size_t start_bin = 0;
    std::size_t end_bin = 0;   // inclusive
    double deviation = 0.0;    // max |real - predicted| within the run, bytes
    double frequency = 0.0;    // events per window in the metadata aggregation
    double source_count = 0.0; // distinct sources
    double mean_source_volume = 0.0; // bytes per source
    std::string grade;         // filled by grade_and_respond
    double grade_omega = 0.0;
    double grade_crisp = 0.0;
    std::string response;      // directive id
    std::string response_detail;
};

/// Trailing-window smoothing of the real series, then contiguous runs of
/// |real - predicted| >= threshold merge into events (the threshold is
/// inclusive).
std::vector<AnomalyEvent> detect_anomaly(const TimeSeries& real, const std::vector<double>& predicted,
                                         double threshold, std::size_t window);

/// Attaches source statistics from the packet log to each event.
void fill_event_sources(std::vector<AnomalyEvent>& events, const TimeSeries& series,
                        const std::vector<PacketRecord>& packets);

struct ResponseRule {
    std::string grade;     // required anomaly grade, or "*"
    std::string locality;  // internal | external | *
    std::string direction; // in | out | *
    std::string privilege; // low | medium | high | *
    std::string action;    // directive id
    std::string detail;    // e.g. block duration
};

struct ResponseContext {
    std::string locality;
    std::string direction;
    std::string privilege;
};

struct NormalizationCaps {
    double deviation_cap = 0.0;     // bytes; default 10 * threshold
    double frequency_cap = 0.0;     // events per window
    double source_cap = 256.0;      // distinct sources
    double volume_cap = 0.0;        // bytes per source (link capacity)
};

/// Grades one event through the Mamdani rulebase on normalized
/// (deviation, frequency, sources, volume) and picks the first matching
/// response directive.
void grade_and_respond(AnomalyEvent& event, const RuleBase& grading,
                       const std::vector<ResponseRule>& responses, const ResponseContext& ctx,
                       const NormalizationCaps& caps);

/// Reads a packet log: one `epoch_seconds src_ip dst_ip size_bytes direction`
/// record per line; '#' starts a comment.
std::vector<PacketRecord> read_packet_log(const std::string& path);

} // namespace riskfuzz

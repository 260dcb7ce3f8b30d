#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "pvshort/character.hpp"
#include "pvshort/charsum.hpp"
#include "pvshort/decomposition.hpp"
#include "pvshort/error.hpp"
#include "pvshort/io.hpp"
#include "pvshort/numeric.hpp"
#include "pvshort/triglemma.hpp"

namespace pvshort {

enum class QFilter { all, primesOnly };

/// Batch experiment parameters. Identical config (seed included) must yield
/// byte-identical outputs regardless of worker_count.
struct SurveyConfig {
    std::uint64_t qLo = 500;
    std::uint64_t qHi = 3000;
    QFilter qFilter = QFilter::primesOnly;
    std::uint64_t charactersPerModulus = 50;  ///< 0 means "all"
    std::vector<double> gammaGrid = {0.0, 0.1, 0.2, 0.3};
    double epsilon = 0.05;
    std::uint64_t alphaGridSize = 100;
    std::uint64_t seed = 1;
    std::string outputDir = "survey_out";
    unsigned workerCount = 0;  ///< 0 means hardware concurrency

    void validate() const {
        if (qLo < 1 || qHi < qLo) throw UsageError("config: need 1 <= q_lo <= q_hi");
        if (qHi > kMaxModulus) throw UsageError("config: q_hi exceeds the supported ceiling");
        if (gammaGrid.empty()) throw UsageError("config: gamma_grid must be non-empty");
        for (std::size_t i = 0; i < gammaGrid.size(); ++i) {
            if (!(gammaGrid[i] >= 0.0 && gammaGrid[i] <= 1.0 / 3.0 + 1e-12))
                throw UsageError("config: gamma values must lie in [0, 1/3]");
            if (i > 0 && !(gammaGrid[i] > gammaGrid[i - 1]))
                throw UsageError("config: gamma_grid must be strictly ascending");
        }
        if (!(epsilon > 0.0)) throw UsageError("config: epsilon must be positive");
        if (alphaGridSize == 0) throw UsageError("config: alpha_grid_size must be positive");
        if (outputDir.empty()) throw UsageError("config: output_dir must be set");
    }

    static SurveyConfig from_key_values(const KeyValueConfig& kv) {
        SurveyConfig c;
        if (const auto v = kv.get("q_lo")) c.qLo = parse_u64(*v);
        if (const auto v = kv.get("q_hi")) c.qHi = parse_u64(*v);
        if (const auto v = kv.get("q_filter")) {
            if (*v == "all") {
                c.qFilter = QFilter::all;
            } else if (*v == "primes" || *v == "primes_only") {
                c.qFilter = QFilter::primesOnly;
            } else {
                throw UsageError("config: q_filter must be 'all' or 'primes'");
            }
        }
        if (const auto v = kv.get("characters_per_modulus"))
            c.charactersPerModulus = (*v == "all") ? 0 : parse_u64(*v);
        if (const auto v = kv.get("gamma_grid")) {
            c.gammaGrid.clear();
            for (const auto& tok : csv_split(*v))
                if (!trim(tok).empty()) c.gammaGrid.push_back(parse_double(trim(tok)));
        }
        if (const auto v = kv.get("epsilon")) c.epsilon = parse_double(*v);
        if (const auto v = kv.get("alpha_grid_size")) c.alphaGridSize = parse_u64(*v);
        if (const auto v = kv.get("seed")) c.seed = parse_u64(*v);
        if (const auto v = kv.get("output_dir")) c.outputDir = *v;
        if (const auto v = kv.get("worker_count"))
            c.workerCount = static_cast<unsigned>(parse_u64(*v));
        c.validate();
        return c;
    }
};

/// One theorem-survey row: the measured max of S(N, chi)/(sqrt(q) log q)
/// over N <= q^{1-gamma} against c (1/3 - gamma + eps).
struct SurveyRecord {
    std::uint64_t q = 0;
    std::string label;
    Parity parity = Parity::even;
    double gamma = 0.0;
    double maxRatio = 0.0;
    std::uint64_t argmaxN = 1;
    double boundValue = 0.0;
};

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
        if (n % p == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> selected_moduli(const SurveyConfig& cfg) {
    std::vector<std::uint64_t> qs;
    for (std::uint64_t q = cfg.qLo; q <= cfg.qHi; ++q)
        if (cfg.qFilter == QFilter::all || is_prime_u64(q)) qs.push_back(q);
    return qs;
}

/// Reproducible sample of `count` labels: rank every index by a counter-based
/// key derived from (seed, q, index) and keep the smallest. Order within the
/// sample stays the enumeration (lexicographic) order.
inline std::vector<CharacterLabel> sample_labels(const std::vector<CharacterLabel>& labels,
                                                 std::uint64_t count, std::uint64_t seed,
                                                 std::uint64_t q) {
    if (count == 0 || count >= labels.size()) return labels;
    std::vector<std::size_t> idx(labels.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const auto ka = mix_keys(seed, q, a);
        const auto kb = mix_keys(seed, q, b);
        return ka != kb ? ka < kb : a < b;
    });
    idx.resize(count);
    std::sort(idx.begin(), idx.end());
    std::vector<CharacterLabel> out;
    out.reserve(count);
    for (const auto i : idx) out.push_back(labels[i]);
    return out;
}

/// Index-sharded worker pool. Shards are independent; the first exception
/// wins and is rethrown on the caller thread after join.
template <typename Fn>
void parallel_for_index(std::size_t count, unsigned workers, Fn&& fn) {
    if (count == 0) return;
    if (workers == 0) workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::scoped_lock lk(error_mu);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

namespace detail {

struct GammaCut {
    double gamma = 0.0;
    std::uint64_t nMax = 1;
    double maxAbs = 0.0;
    std::uint64_t argmaxN = 1;
};

}  // namespace detail

/// Max-ratio scan for one modulus: one O(q) prefix pass per character covers
/// every gamma cutoff simultaneously.
inline std::vector<SurveyRecord> theorem_records_for_modulus(std::uint64_t q,
                                                             const SurveyConfig& cfg) {
    std::vector<SurveyRecord> rows;
    const CharacterGroup group(q);
    const auto primitive = group.enumerate_primitive();
    if (primitive.empty()) return rows;
    const auto chosen = sample_labels(primitive, cfg.charactersPerModulus, cfg.seed, q);
    const RootTable roots(group.angle_denominator());
    const double denom = std::sqrt(static_cast<double>(q)) * std::log(static_cast<double>(q));

    for (const auto& label : chosen) {
        std::vector<detail::GammaCut> cuts;
        cuts.reserve(cfg.gammaGrid.size());
        for (const double g : cfg.gammaGrid) {
            detail::GammaCut c;
            c.gamma = g;
            const auto lim = floor_snapped(real_power(q, 1.0 - g));
            c.nMax = std::min<std::uint64_t>(q - 1, static_cast<std::uint64_t>(lim));
            cuts.push_back(c);
        }
        scan_prefix_sums(group, label, roots, [&](std::uint64_t n, std::complex<double> s) {
            const double mag = std::abs(s);
            for (auto& c : cuts) {
                if (n > c.nMax) break;  // gamma grid ascending => cutoffs descending
                if (mag > c.maxAbs) {
                    c.maxAbs = mag;
                    c.argmaxN = n;
                }
            }
        });
        const Parity par = group.parity(label);
        const double cpar = (par == Parity::even)
                                ? 2.0 / (std::numbers::pi * std::numbers::pi)
                                : 1.0 / std::numbers::pi;
        for (const auto& c : cuts) {
            SurveyRecord r;
            r.q = q;
            r.label = to_string(label);
            r.parity = par;
            r.gamma = c.gamma;
            r.maxRatio = c.maxAbs / denom;
            r.argmaxN = c.argmaxN;
            r.boundValue = cpar * (1.0 / 3.0 - c.gamma + cfg.epsilon);
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

inline std::string theorem_csv_header() {
    return "q,label,parity,gamma,max_ratio,argmax_n,bound_value\n";
}

inline std::string theorem_csv_row(const SurveyRecord& r) {
    return csv_row({format_u64(r.q), r.label, to_string(r.parity), format_double(r.gamma),
                    format_double(r.maxRatio), format_u64(r.argmaxN),
                    format_double(r.boundValue)});
}

inline SurveyRecord parse_theorem_csv_row(const std::string& line) {
    const auto f = csv_split(line);
    if (f.size() != 7) throw UsageError("bad survey row: " + line);
    SurveyRecord r;
    r.q = parse_u64(f[0]);
    r.label = f[1];
    r.parity = (f[2] == "even") ? Parity::even : Parity::odd;
    r.gamma = parse_double(f[3]);
    r.maxRatio = parse_double(f[4]);
    r.argmaxN = parse_u64(f[5]);
    r.boundValue = parse_double(f[6]);
    return r;
}

enum class PlotKind { ratio_vs_gamma, argmax_location };

/// Tidy plot-ready exports. ratio_vs_gamma groups by (gamma, parity), with
/// the parity-specific theorem bound column; argmax_location records the
/// N-at-maximum over q at the smallest gamma (the full-range scan).
inline void emit_plot_data(const std::vector<SurveyRecord>& records, PlotKind kind,
                           const std::filesystem::path& outputDir) {
    if (records.empty()) throw EmptyInputError("emit_plot_data: no records");
    if (kind == PlotKind::ratio_vs_gamma) {
        std::map<std::pair<double, int>, std::vector<const SurveyRecord*>> groups;
        for (const auto& r : records)
            groups[{r.gamma, r.parity == Parity::even ? 0 : 1}].push_back(&r);
        std::string out = "gamma,parity,mean_ratio,max_ratio,bound\n";
        for (const auto& [key, rows] : groups) {
            CompensatedSum mean;
            double maxr = 0.0;
            for (const auto* r : rows) {
                mean.add(r->maxRatio);
                maxr = std::max(maxr, r->maxRatio);
            }
            out += csv_row({format_double(key.first), key.second == 0 ? "even" : "odd",
                            format_double(mean.value() / static_cast<double>(rows.size())),
                            format_double(maxr), format_double(rows.front()->boundValue)});
        }
        write_file_atomic(outputDir / "ratio_vs_gamma.csv", out);
    } else {
        double gmin = records.front().gamma;
        for (const auto& r : records) gmin = std::min(gmin, r.gamma);
        std::string out = "q,argmax_n_over_q\n";
        for (const auto& r : records) {
            if (r.gamma != gmin) continue;
            out += csv_row({format_u64(r.q),
                            format_double(static_cast<double>(r.argmaxN) /
                                          static_cast<double>(r.q))});
        }
        write_file_atomic(outputDir / "argmax_location.csv", out);
    }
}

/// Full theorem survey: per-q shards in parallel, merged in q order, written
/// atomically. Returns the records (rows sorted by (q, label, gamma)).
inline std::vector<SurveyRecord> run_theorem_survey(const SurveyConfig& cfg) {
    cfg.validate();
    const auto qs = selected_moduli(cfg);
    std::vector<std::vector<SurveyRecord>> shards(qs.size());
    parallel_for_index(qs.size(), cfg.workerCount,
                       [&](std::size_t i) { shards[i] = theorem_records_for_modulus(qs[i], cfg); });

    std::vector<SurveyRecord> records;
    std::string csv = theorem_csv_header();
    for (const auto& shard : shards) {
        for (const auto& r : shard) {
            csv += theorem_csv_row(r);
            records.push_back(r);
        }
    }
    const std::filesystem::path dir(cfg.outputDir);
    write_file_atomic(dir / "theorem_survey.csv", csv);
    if (!records.empty()) {
        emit_plot_data(records, PlotKind::ratio_vs_gamma, dir);
        emit_plot_data(records, PlotKind::argmax_location, dir);
    }
    return records;
}

/// Lemma sweep over (q, gamma, alpha) cells, one CSV per bound. Cells whose
/// window fails the split precondition carry the flag instead of numbers.
/// The (m, p, alpha) floor sweep runs at the largest selected modulus.
inline void run_lemma_survey(const SurveyConfig& cfg) {
    cfg.validate();
    const auto qs = selected_moduli(cfg);
    if (qs.empty()) throw UsageError("run_lemma_survey: no moduli selected");
    std::vector<double> alphas(cfg.alphaGridSize);
    for (std::uint64_t j = 0; j < cfg.alphaGridSize; ++j)
        alphas[j] = 2.0 * std::numbers::pi * static_cast<double>(j) /
                    static_cast<double>(cfg.alphaGridSize);

    // Assembled acceptance thresholds for the 'holds' column of eq1/eq2.
    const double eq1_threshold = 9.0;
    const double eq2_threshold = (2.0 / std::numbers::pi) * 9.0 + 1.0;

    std::vector<std::array<std::string, 3>> shards(qs.size());  // eq1, eq2, eq3 rows
    parallel_for_index(qs.size(), cfg.workerCount, [&](std::size_t i) {
        const std::uint64_t q = qs[i];
        std::string rows1, rows2, rows3;
        for (const double g : cfg.gammaGrid) {
            const bool ok = split_precondition_holds(q, g, cfg.epsilon);
            for (const double a : alphas) {
                const std::string head =
                    format_u64(q) + "," + format_double(g) + "," + format_double(cfg.epsilon) +
                    "," + format_double(a) + ",";
                if (!ok) {
                    const std::string flagged = head + ",,,precondition_failed\n";
                    rows1 += flagged;
                    rows2 += flagged;
                    rows3 += head + ",,,,precondition_failed\n";
                    continue;
                }
                const auto r1 = lemma_eq1(q, g, cfg.epsilon, a);
                rows1 += head + format_double(r1.lhs) + "," + format_double(r1.mainTerm) + "," +
                         format_double(r1.residual) + "," +
                         (r1.residual <= eq1_threshold ? "true" : "false") + "\n";
                const auto r2 = lemma_eq2(q, g, cfg.epsilon, a);
                rows2 += head + format_double(r2.lhs) + "," + format_double(r2.mainTerm) + "," +
                         format_double(r2.residual) + "," +
                         (r2.residual <= eq2_threshold ? "true" : "false") + "\n";
                const auto r3 = sigma_lower_bound_eq3(q, g, cfg.epsilon, a);
                rows3 += head + format_double(r3.value) + "," + format_double(r3.chainBound) +
                         "," + format_double(r3.value - r3.chainBound) + "," +
                         format_double(r3.splitResidual) + "," +
                         (r3.holds ? "true" : "false") + "\n";
            }
        }
        shards[i] = {std::move(rows1), std::move(rows2), std::move(rows3)};
    });

    const std::string lemma_header = "q,gamma,epsilon,alpha,lhs,main_term,residual,holds\n";
    std::string csv1 = lemma_header, csv2 = lemma_header;
    std::string csv3 = "q,gamma,epsilon,alpha,lhs,main_term,residual,split_residual,holds\n";
    for (const auto& s : shards) {
        csv1 += s[0];
        csv2 += s[1];
        csv3 += s[2];
    }

    // eq4 floor sweep at the largest modulus: m <= 20, odd p <= 51.
    const std::uint64_t q4 = qs.back();
    std::string csv4 = "q,m,p,alpha,value,bound,residual,holds\n";
    for (std::uint64_t m = 1; m <= 20; ++m) {
        for (std::uint64_t p = 1; p <= 51; p += 2) {
            for (const double a : alphas) {
                const auto r = lower_bound_eq4_check(m, p, a, q4);
                csv4 += format_u64(q4) + "," + format_u64(m) + "," + format_u64(p) + "," +
                        format_double(a) + "," + format_double(r.value) + "," +
                        format_double(r.bound) + "," + format_double(r.value - r.bound) + "," +
                        (r.holds ? "true" : "false") + "\n";
            }
        }
    }

    const std::filesystem::path dir(cfg.outputDir);
    write_file_atomic(dir / "lemma_eq1.csv", csv1);
    write_file_atomic(dir / "lemma_eq2.csv", csv2);
    write_file_atomic(dir / "lemma_eq3.csv", csv3);
    write_file_atomic(dir / "lemma_eq4.csv", csv4);
}

/// Per-cell decomposition reports at three N values. Every report passes the
/// partition check and the inversion-identity oracle before it is emitted;
/// a failure aborts the survey naming the offending (q, label, N).
inline std::vector<DecompositionReport> run_decomposition_survey(const SurveyConfig& cfg) {
    cfg.validate();
    const auto qs = selected_moduli(cfg);
    struct Entry {
        DecompositionReport report;
        std::string nKind;
        double reconError = 0.0;
    };
    std::vector<std::vector<Entry>> shards(qs.size());

    parallel_for_index(qs.size(), cfg.workerCount, [&](std::size_t i) {
        const std::uint64_t q = qs[i];
        const CharacterGroup group(q);
        const auto primitive = group.enumerate_primitive();
        if (primitive.empty()) return;
        const auto chosen = sample_labels(primitive, cfg.charactersPerModulus, cfg.seed, q);
        const RootTable chi_roots(group.angle_denominator());

        for (const auto& label : chosen) {
            for (const double g : cfg.gammaGrid) {
                const std::uint64_t nmax = std::min<std::uint64_t>(
                    q - 1,
                    static_cast<std::uint64_t>(floor_snapped(real_power(q, 1.0 - g))));
                const std::uint64_t nhalf = std::min<std::uint64_t>(q / 2, nmax);
                const std::array<std::pair<std::uint64_t, const char*>, 3> points{
                    {{1, "unit"}, {nhalf, "half"}, {nmax, "hypothesis_max"}}};
                for (const auto& [N, kind] : points) {
                    Entry e;
                    e.report = decompose_sum(group, label, N, g, cfg.epsilon);
                    e.nKind = kind;
                    const double tol =
                        1e-9 * (1.0 + std::abs(e.report.fullInner));
                    if (e.report.partitionResidual > tol)
                        throw OracleError("partition check failed at q=" + std::to_string(q) +
                                          " label=" + to_string(label) +
                                          " N=" + std::to_string(N));
                    // Inversion oracle: reconstruction vs the direct prefix sum.
                    ComplexSum direct;
                    const BoundCharacter chi(group, label);
                    const std::uint64_t stop = std::min(N, q - 1);
                    for (std::uint64_t n = 1; n <= stop; ++n)
                        if (const auto k = chi.angle_num(n)) direct.add(chi_roots[*k]);
                    const auto recon = reconstruct_via_inversion(group, label, stop);
                    e.reconError = std::abs(recon - direct.value());
                    if (e.reconError > 1e-8 * std::sqrt(static_cast<double>(q)))
                        throw OracleError("inversion oracle failed at q=" + std::to_string(q) +
                                          " label=" + to_string(label) +
                                          " N=" + std::to_string(N));
                    shards[i].push_back(std::move(e));
                }
            }
        }
    });

    nlohmann::json arr = nlohmann::json::array();
    std::vector<DecompositionReport> reports;
    for (const auto& shard : shards) {
        for (const auto& e : shard) {
            nlohmann::json j = to_json(e.report);
            j["n_kind"] = e.nKind;
            j["recon_error"] = e.reconError;
            arr.push_back(std::move(j));
            reports.push_back(e.report);
        }
    }
    write_file_atomic(std::filesystem::path(cfg.outputDir) / "decomposition_reports.json",
                      arr.dump(2) + "\n");
    return reports;
}

}  // namespace pvshort

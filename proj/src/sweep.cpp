#include "adlab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <functional>
#include <thread>

#include "adlab/attacks.hpp"
#include "adlab/truncation.hpp"

namespace adlab {

void SweepTable::write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        os << (i == 0 ? "" : ",") << columns[i];
    }
    os << "\n";
    os.precision(17);
    for (const auto& r : rows) {
        os << r.rounds << "," << r.seed << "," << r.max_error << "," << r.envelope << ","
           << r.escaped << "\n";
    }
}

double scaling_envelope(const ExperimentConfig& config, std::int64_t t) {
    const double k = static_cast<double>(class_depth(config.analyst).k_int);
    const double d_q = static_cast<double>(config.analyst.d_q);
    const double logt = std::log(static_cast<double>(std::max<std::int64_t>(t, 2)));
    const double n = static_cast<double>(config.n);
    const AnalystClass cls = config.analyst.analyst_class();
    double env = 0.0;
    if (cls == AnalystClass::Progressive) {
        env = std::sqrt(k * d_q * logt / n);
    } else {
        env = std::pow(k * d_q * logt, 0.25) / std::sqrt(n);
    }
    return config.envelope_multiplier * env;
}

namespace {

void run_parallel(std::size_t jobs, int threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || jobs <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int used = std::min<int>(threads, static_cast<int>(jobs));
    pool.reserve(static_cast<std::size_t>(used));
    for (int w = 0; w < used; ++w) {
        pool.emplace_back([&]() {
            for (std::size_t i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

SweepTable scaling_sweep(const ExperimentConfig& base, const std::vector<std::int64_t>& t_axis,
                         const std::vector<std::uint64_t>& seeds, int threads) {
    if (t_axis.empty() || seeds.empty()) {
        throw std::invalid_argument("scaling_sweep: empty t axis or seed list");
    }
    if (!std::is_sorted(t_axis.begin(), t_axis.end())) {
        throw std::invalid_argument("scaling_sweep: t axis must be ascending");
    }
    const std::int64_t t_max = t_axis.back();

    std::vector<double> envelopes;
    envelopes.reserve(t_axis.size());
    for (const auto t : t_axis) envelopes.push_back(scaling_envelope(base, t));

    std::vector<std::vector<SweepRow>> per_seed(seeds.size());
    run_parallel(seeds.size(), threads, [&](std::size_t si) {
        ExperimentConfig cfg = base;
        cfg.seed = seeds[si];
        cfg.rounds = t_max;
        RunResult result;
        std::int64_t escaped = 0;
        try {
            run_session(cfg, &result);
        } catch (const EscapeError&) {
            escaped = 1;
        }
        double prefix_max = 0.0;
        std::size_t axis = 0;
        std::vector<SweepRow> rows;
        for (std::int64_t t = 1; t <= t_max && axis < t_axis.size(); ++t) {
            if (!escaped) {
                prefix_max = std::max(prefix_max, result.per_round_error[static_cast<std::size_t>(t - 1)]);
            }
            if (t == t_axis[axis]) {
                SweepRow row;
                row.rounds = t;
                row.seed = seeds[si];
                row.max_error = prefix_max;
                row.envelope = envelopes[axis];
                row.escaped = escaped;
                rows.push_back(row);
                ++axis;
            }
        }
        per_seed[si] = std::move(rows);
    });

    SweepTable table;
    for (std::size_t axis = 0; axis < t_axis.size(); ++axis) {
        for (std::size_t si = 0; si < seeds.size(); ++si) {
            if (axis < per_seed[si].size()) table.rows.push_back(per_seed[si][axis]);
        }
    }
    return table;
}

SweepTable attack_sweep(std::size_t n, const std::vector<std::int64_t>& t_axis,
                        const std::vector<std::uint64_t>& seeds, int threads) {
    if (t_axis.empty() || seeds.empty()) {
        throw std::invalid_argument("attack_sweep: empty t axis or seed list");
    }
    const std::size_t jobs = t_axis.size() * seeds.size();
    std::vector<SweepRow> rows(jobs);
    run_parallel(jobs, threads, [&](std::size_t i) {
        const std::size_t ti = i / seeds.size();
        const std::size_t si = i % seeds.size();
        const auto res = overfit_attack(n, static_cast<int>(t_axis[ti]), seeds[si]);
        SweepRow row;
        row.rounds = t_axis[ti];
        row.seed = seeds[si];
        row.max_error = res.final_error;
        row.envelope = res.hoeffding_baseline;
        rows[i] = row;
    });
    SweepTable table;
    table.columns = {"t", "seed", "final_error", "hoeffding_baseline", "escaped"};
    table.rows = std::move(rows);
    return table;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("ls_slope: need two matched samples");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-300) throw std::invalid_argument("ls_slope: degenerate x values");
    return (n * sxy - sx * sy) / denom;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double stat = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double d1 = a[i];
        const double d2 = b[j];
        if (d1 <= d2) {
            while (i < a.size() && a[i] == d1) ++i;
        }
        if (d2 <= d1) {
            while (j < b.size() && b[j] == d2) ++j;
        }
        const double fa = static_cast<double>(i) / static_cast<double>(a.size());
        const double fb = static_cast<double>(j) / static_cast<double>(b.size());
        stat = std::max(stat, std::abs(fa - fb));
    }
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double en = std::sqrt(na * nb / (na + nb));
    const double lambda = (en + 0.12 + 0.11 / en) * stat;
    KsResult out;
    out.statistic = stat;
    if (lambda < 1e-3) {
        out.p_value = 1.0;
        return out;
    }
    double p = 0.0;
    bool converged = false;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lambda * lambda);
        p += term;
        if (std::abs(term) < 1e-12) {
            converged = true;
            break;
        }
    }
    out.p_value = converged ? std::min(1.0, std::max(0.0, p)) : 1.0;
    return out;
}

}  // namespace adlab

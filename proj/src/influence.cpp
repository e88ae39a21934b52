#include "riskfuzz/influence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace riskfuzz {

std::size_t InfluenceMap::add_vertex(const std::string& name) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) {
            return i;
        }
    }
    names_.push_back(name);
    for (auto& row : w_) {
        row.push_back(0.0);
    }
    w_.emplace_back(names_.size(), 0.0);
    return names_.size() - 1;
}

std::size_t InfluenceMap::vertex(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) {
            return i;
        }
    }
    throw DomainError("unknown vertex '" + name + "'");
}

void InfluenceMap::add_edge(std::size_t from, std::size_t to, double weight) {
    if (from >= size() || to >= size()) {
        throw DomainError("edge endpoint out of range");
    }
    if (from == to) {
        throw DomainError("self-loops are not allowed in influence maps");
    }
    if (weight < -1.0 || weight > 1.0) {
        throw DomainError("edge weight must lie in [-1, 1]");
    }
    w_[from][to] = weight;
}

void InfluenceMap::add_edge(const std::string& from, const std::string& to, double weight) {
    add_edge(add_vertex(from), add_vertex(to), weight);
}

double InfluenceMap::lexicon_weight(const std::string& label) {
    if (label == "слабо" || label == "weak") {
        return 1.0 / 3.0;
    }
    if (label == "умеренно" || label == "moderate") {
        return 2.0 / 3.0;
    }
    if (label == "сильно" || label == "strong") {
        return 1.0;
    }
    throw DomainError("unknown influence label '" + label + "'");
}

std::string InfluenceMap::lexicon_label(double w) {
    if (std::abs(w - 1.0 / 3.0) < 1e-9) {
        return "слабо";
    }
    if (std::abs(w - 2.0 / 3.0) < 1e-9) {
        return "умеренно";
    }
    if (std::abs(w - 1.0) < 1e-9) {
        return "сильно";
    }
    return "";
}

namespace {

// depth-first enumeration of simple paths with a length cap
void walk_paths(const InfluenceMap& map, std::size_t cur, std::size_t dst, std::size_t max_len,
                std::vector<std::size_t>& path, std::vector<bool>& used,
                const std::function<void(const std::vector<std::size_t>&)>& emit) {
    if (cur == dst && path.size() > 1) {
        emit(path);
        return;
    }
    if (path.size() > max_len) {
        return;
    }
    for (std::size_t next = 0; next < map.size(); ++next) {
        if (used[next] || map.weight(cur, next) == 0.0) {
            continue;
        }
        if (next == dst) {
            path.push_back(next);
            emit(path);
            path.pop_back();
            continue;
        }
        if (path.size() == max_len) {
            continue;
        }
        used[next] = true;
        path.push_back(next);
        walk_paths(map, next, dst, max_len, path, used, emit);
        path.pop_back();
        used[next] = false;
    }
}

} // namespace

PathInfluenceResult path_influence(const InfluenceMap& map, std::size_t i, std::size_t j,
                                   std::size_t max_len) {
    if (i >= map.size() || j >= map.size()) {
        throw DomainError("path_influence vertex out of range");
    }
    if (max_len < 1) {
        throw DomainError("max_len must be at least 1");
    }
    PathInfluenceResult res;
    std::vector<std::size_t> path{i};
    std::vector<bool> used(map.size(), false);
    used[i] = true;
    walk_paths(map, i, j, max_len, path, used, [&](const std::vector<std::size_t>& p) {
        double s = 1.0;
        for (std::size_t k = 1; k < p.size(); ++k) {
            s = std::min(s, map.weight(p[k - 1], p[k]));
        }
        res.paths.push_back({p, s});
        res.total = std::max(res.total, s);
    });
    std::sort(res.paths.begin(), res.paths.end(), [](const PathInfluence& a, const PathInfluence& b) {
        if (a.strength != b.strength) {
            return a.strength > b.strength;
        }
        return a.path < b.path;
    });
    return res;
}

SignedInfluence signed_influence(const InfluenceMap& map, std::size_t i, std::size_t j,
                                 double alpha, std::optional<std::size_t> max_len) {
    if (alpha <= 0.0 || alpha > 1.0) {
        throw DomainError("attenuation alpha must lie in (0, 1]");
    }
    std::size_t cap = max_len.value_or(map.size());
    SignedInfluence res;
    double pos = 0.0, neg = 0.0;
    std::vector<std::size_t> path{i};
    std::vector<bool> used(map.size(), false);
    used[i] = true;
    walk_paths(map, i, j, cap, path, used, [&](const std::vector<std::size_t>& p) {
        int sign = 1;
        for (std::size_t k = 1; k < p.size(); ++k) {
            if (map.weight(p[k - 1], p[k]) < 0) {
                sign = -sign;
            }
        }
        double f = std::pow(alpha, static_cast<double>(p.size() - 1));
        if (sign > 0) {
            pos += f;
        } else {
            neg += f;
        }
    });
    res.positive = pos;
    res.negative = -neg;
    res.strength = pos - neg;
    res.consonance = (pos + neg > 0.0) ? (pos - neg) / (pos + neg) : 1.0;
    return res;
}

std::vector<ForecastStep> forecast(const InfluenceMap& map, std::vector<double> x0,
                                   std::vector<double> p0, std::size_t steps) {
    const std::size_t n = map.size();
    if (x0.size() != n || p0.size() != n) {
        throw DomainError("forecast state/increment dimension mismatch");
    }
    for (double p : p0) {
        if (std::abs(p) > 1.0 + 1e-12) {
            throw DomainError("initial increments must have magnitude <= 1");
        }
    }
    std::vector<ForecastStep> out;
    std::vector<double> x = std::move(x0);
    std::vector<double> p = std::move(p0);
    for (std::size_t t = 0; t < steps; ++t) {
        std::vector<double> np(n, 0.0), cons(n, 1.0);
        for (std::size_t v = 0; v < n; ++v) {
            double best_pos = 0.0, best_neg = 0.0;
            for (std::size_t u = 0; u < n; ++u) {
                double c = p[u] * map.weight(u, v);
                if (c > 0.0) {
                    best_pos = std::max(best_pos, c);
                } else if (c < 0.0) {
                    best_neg = std::max(best_neg, -c);
                }
            }
            // the larger magnitude wins; ties prefer the positive contribution
            np[v] = (best_pos >= best_neg) ? best_pos : -best_neg;
            cons[v] = (best_pos + best_neg > 0.0)
                          ? std::abs(best_pos - best_neg) / (best_pos + best_neg)
                          : 1.0;
        }
        for (std::size_t v = 0; v < n; ++v) {
            x[v] = std::clamp(x[v] + np[v], 0.0, 1.0);
        }
        p = np;
        out.push_back({x, p, cons});
    }
    return out;
}

std::vector<std::vector<double>> transitive_closure(const InfluenceMap& map) {
    const std::size_t n = map.size();
    std::vector<std::vector<double>> closure = map.matrix();
    std::vector<std::vector<double>> power = map.matrix();
    for (std::size_t k = 2; k <= n; ++k) {
        std::vector<std::vector<double>> next(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double best = 0.0;
                for (std::size_t l = 0; l < n; ++l) {
                    double c = power[i][l] * map.weight(l, j);
                    if (std::abs(c) > std::abs(best)) {
                        best = c;
                    }
                }
                next[i][j] = best;
            }
        }
        power = next;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (std::abs(power[i][j]) > std::abs(closure[i][j])) {
                    closure[i][j] = power[i][j];
                }
            }
        }
    }
    return closure;
}

InverseSolution solve_inverse(const std::vector<std::vector<double>>& closure,
                              const std::vector<double>& target, double grid_step,
                              double tolerance) {
    const std::size_t n = closure.size();
    if (n == 0 || target.size() != n) {
        throw DomainError("solve_inverse dimension mismatch");
    }
    if (n > 8) {
        throw DomainError("solve_inverse is exhaustive and limited to 8 inputs");
    }
    if (grid_step <= 0.0 || grid_step > 1.0) {
        throw DomainError("grid step must lie in (0, 1]");
    }
    const std::size_t levels = static_cast<std::size_t>(std::llround(1.0 / grid_step)) + 1;
    if (std::abs((levels - 1) * grid_step - 1.0) > 1e-9) {
        throw DomainError("grid step must divide 1");
    }
    InverseSolution sol;
    std::vector<double> u(n, 0.0);
    std::vector<std::size_t> idx(n, 0);
    double best_err = 1e300;
    while (true) {
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = std::min(1.0, static_cast<double>(idx[i]) * grid_step);
        }
        double err = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double best = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double c = u[i] * closure[i][j];
                if (std::abs(c) > std::abs(best)) {
                    best = c;
                }
            }
            err = std::max(err, std::abs(best - target[j]));
        }
        if (err <= tolerance) {
            sol.inputs.push_back(u);
        }
        if (err < best_err) {
            best_err = err;
            sol.nearest = u;
            sol.nearest_error = err;
        }
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (++idx[i] < levels) {
                break;
            }
            idx[i] = 0;
        }
        if (i == n) {
            break;
        }
    }
    std::sort(sol.inputs.begin(), sol.inputs.end());
    return sol;
}

} // namespace riskfuzz

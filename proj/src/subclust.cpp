#include "speechcmd/subclust.hpp"

#include <cmath>
#include <limits>

#include "speechcmd/errors.hpp"

namespace speechcmd::anfis {

void ClusteringConfig::validate() const {
    if (!(radius > 0.0 && radius <= 1.0))
        throw ConfigError("subtractive_clustering: radius must lie in (0, 1]");
    if (!(squash_factor > 1.0))
        throw ConfigError("subtractive_clustering: squash_factor must exceed 1");
    if (!(reject_ratio > 0.0 && reject_ratio < accept_ratio && accept_ratio <= 1.0))
        throw ConfigError("subtractive_clustering: need 0 < reject_ratio < accept_ratio <= 1");
}

namespace {

struct ScaledData {
    std::vector<std::vector<double>> points;
    std::vector<double> min, range;
};

ScaledData min_max_scale(const std::vector<std::vector<double>>& data) {
    const std::size_t dim = data.front().size();
    ScaledData s;
    s.min.assign(dim, std::numeric_limits<double>::infinity());
    std::vector<double> max(dim, -std::numeric_limits<double>::infinity());
    for (const auto& x : data) {
        if (x.size() != dim) throw DataError("subtractive_clustering: ragged data");
        for (std::size_t d = 0; d < dim; ++d) {
            s.min[d] = std::min(s.min[d], x[d]);
            max[d] = std::max(max[d], x[d]);
        }
    }
    s.range.resize(dim);
    for (std::size_t d = 0; d < dim; ++d) s.range[d] = max[d] - s.min[d];

    s.points.reserve(data.size());
    for (const auto& x : data) {
        std::vector<double> p(dim);
        for (std::size_t d = 0; d < dim; ++d)
            p[d] = s.range[d] > 0.0 ? (x[d] - s.min[d]) / s.range[d] : 0.0;
        s.points.push_back(std::move(p));
    }
    return s;
}

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double delta = a[d] - b[d];
        acc += delta * delta;
    }
    return acc;
}

}  // namespace

std::vector<std::vector<double>> subtractive_clustering(
    const std::vector<std::vector<double>>& data, const ClusteringConfig& cfg) {
    cfg.validate();
    if (data.empty()) throw DataError("subtractive_clustering: no data");

    const ScaledData scaled = min_max_scale(data);
    const auto& pts = scaled.points;
    const std::size_t n = pts.size();

    const double alpha = 4.0 / (cfg.radius * cfg.radius);
    const double rb = cfg.squash_factor * cfg.radius;
    const double beta = 4.0 / (rb * rb);

    std::vector<double> potential(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            potential[i] += std::exp(-alpha * sq_dist(pts[i], pts[j]));

    std::vector<std::size_t> center_idx;
    double first_potential = 0.0;

    while (true) {
        // Highest remaining potential; earliest index wins ties.
        std::size_t best = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (potential[i] > potential[best]) best = i;
        const double p = potential[best];
        if (p <= 0.0) break;

        if (center_idx.empty()) {
            first_potential = p;
        } else if (p < cfg.reject_ratio * first_potential) {
            break;
        } else if (p < cfg.accept_ratio * first_potential) {
            // Gray zone: accept only if far enough from existing centers
            // relative to the surrendered potential.
            double dmin_sq = std::numeric_limits<double>::infinity();
            for (std::size_t c : center_idx) dmin_sq = std::min(dmin_sq, sq_dist(pts[best], pts[c]));
            if (std::sqrt(dmin_sq) / cfg.radius + p / first_potential < 1.0) {
                potential[best] = 0.0;  // discard this candidate, keep searching
                continue;
            }
        }

        center_idx.push_back(best);
        for (std::size_t i = 0; i < n; ++i)
            potential[i] -= p * std::exp(-beta * sq_dist(pts[i], pts[best]));
    }

    std::vector<std::vector<double>> centers;
    centers.reserve(center_idx.size());
    for (std::size_t c : center_idx) centers.push_back(data[c]);
    return centers;
}

AnfisModel init_from_centers(const std::vector<std::vector<double>>& centers,
                             const std::vector<std::vector<double>>& data, double radius) {
    if (centers.empty()) throw DataError("init_from_centers: need at least one center");
    if (data.empty()) throw DataError("init_from_centers: need data to size the memberships");
    const std::size_t dim = centers.front().size();
    if (data.front().size() != dim)
        throw DataError("init_from_centers: data and center dimensions differ");

    const ScaledData scaled = min_max_scale(data);
    std::vector<double> sigma(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        // Width matching the clustering radius; a flat dimension gets the
        // width the radius would have on unit range.
        const double range = scaled.range[d] > 0.0 ? scaled.range[d] : 1.0;
        sigma[d] = radius * range / std::sqrt(8.0);
    }

    AnfisModel m;
    m.input_dim = dim;
    m.rules.reserve(centers.size());
    for (const auto& c : centers) {
        if (c.size() != dim) throw DataError("init_from_centers: ragged centers");
        Rule r;
        r.antecedents.reserve(dim);
        for (std::size_t d = 0; d < dim; ++d) r.antecedents.push_back({c[d], sigma[d]});
        r.coeffs.assign(dim, 0.0);
        r.bias = 0.0;
        m.rules.push_back(std::move(r));
    }
    return m;
}

}  // namespace speechcmd::anfis

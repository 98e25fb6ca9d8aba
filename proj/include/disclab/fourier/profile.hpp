#pragma once

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "disclab/geometry/body.hpp"
#include "disclab/geometry/chords.hpp"
#include "disclab/util/oscmoments.hpp"
#include "disclab/util/rootfind.hpp"

namespace disclab::fourier {

/// Slice profile of a centrally symmetric body along direction u(theta):
/// Lambda(tau) = length of C cut by {x . u = tau}, tau in [0, T], T = W/2,
/// represented by Legendre panels graded toward the cap singularity at T.
/// The transform
///   F(sigma) = int_{-T}^{T} Lambda(|tau|) e^{-2 pi i sigma tau} d tau
///            = 2 int_0^T Lambda(tau) cos(2 pi sigma tau) d tau
/// is evaluated with linear-phase Legendre moments, so the cost does not
/// grow with sigma.
class ChordProfile {
  public:
    ChordProfile(const geo::ConvexBody& body, double theta) : theta_(theta) {
        if (!body.curve && body.variant != geo::BodyVariant::Disk)
            throw std::logic_error("ChordProfile: needs a curve-backed body or disk");
        T_ = 0.5 * body.width(theta);
        buildPanels(body);
    }

    double halfWidth() const { return T_; }
    double width() const { return 2.0 * T_; }

    /// The (real) transform F(sigma); sigma is the radial frequency along u.
    double transform(double sigma) const {
        const double omega = 2.0 * M_PI * sigma;
        double s = 0.0;
        for (const auto& p : panels_) s += p.integrateOsc(omega).real();
        return 2.0 * s;
    }

    /// Conservative interpolation-error estimate for |F(sigma)|.
    double errorEstimate(double sigma) const {
        const double omega = std::max(2.0 * M_PI * std::fabs(sigma), 1e-30);
        double e = 0.0;
        for (const auto& p : panels_) e += p.tailEstimate() * std::min(p.b - p.a, 4.0 / omega);
        return 2.0 * e;
    }

    /// int Lambda = area of the body (construction sanity check).
    double area() const {
        double s = 0.0;
        for (const auto& p : panels_) s += p.integrate();
        return 2.0 * s;
    }

    /// Profile value at tau (from the panel representation).
    double value(double tau) const {
        for (const auto& p : panels_)
            if (tau >= p.a && tau <= p.b) return p.eval(tau);
        return 0.0;
    }

    const std::vector<LegendrePanel>& panels() const { return panels_; }

    /// Height of the flat (infinite-curvature) boundary point along this
    /// direction, or -1 when the body has none. Feeds the demodulated
    /// weight route, which needs the cross-term frequencies.
    double flatHeight() const { return flatHeight_; }

  private:
    void buildPanels(const geo::ConvexBody& body) {
        const Vec2 u = dir(theta_);
        const Vec2 uPerp = u.perp();

        // slice endpoints: the ascending boundary arc carries the lower
        // endpoint; by central symmetry Lambda(tau) = -(r(tau) + r(-tau))
        // with r = uPerp-coordinate of that endpoint. Consecutive panel
        // nodes are close, so a warm-started Newton (bracket-guarded, Brent
        // fallback) resolves each height in a few boundary evaluations.
        const double phiLo = theta_ - M_PI / 2 + 1e-12, phiHi = theta_ + M_PI / 2 - 1e-12;
        struct EndpointSolver {
            const geo::ConvexBody& body;
            Vec2 u;
            double lo, hi;
            double guess;
            double solve(double tau) {
                auto g = [&](double phi) { return body.gammaAt(normalizeAngle(phi)).point.dot(u) - tau; };
                double phi = std::clamp(guess, lo, hi);
                for (int it = 0; it < 8; ++it) {
                    const auto bs = body.gammaAt(normalizeAngle(phi));
                    const double gv = bs.point.dot(u) - tau;
                    const double dg = std::cos(bs.tangentAngle - std::atan2(u.y, u.x)) / bs.curvature;
                    if (dg <= 0.0) break;
                    const double step = gv / dg;
                    const double next = phi - step;
                    if (next < lo || next > hi) break;
                    phi = next;
                    if (std::fabs(step) < 1e-13) {
                        guess = phi;
                        return phi;
                    }
                }
                phi = brent(g, lo, hi, 1e-14);
                guess = phi;
                return phi;
            }
        };
        const double thetaAngle = theta_;
        EndpointSolver plusSolver{body, u, phiLo, phiHi, thetaAngle};
        EndpointSolver minusSolver{body, u, phiLo, phiHi, thetaAngle};
        auto rightCoord = [&](double tau, EndpointSolver& solver) {
            const double phi = solver.solve(tau);
            return body.gammaAt(normalizeAngle(phi)).point.dot(uPerp);
        };
        auto lambda = [&](double tau) {
            return -(rightCoord(tau, plusSolver) + rightCoord(-tau, minusSolver));
        };

        // breakpoints at junction heights of either slice endpoint; heights
        // of infinite-curvature (flat) points need cap-style grading, since
        // Lambda carries a fractional power there, not just a C^2 kink
        std::vector<double> cuts = {0.0};
        std::vector<double> singular;  // graded two-sided
        if (body.curve) {
            const bool hasFlatPoint = body.curve->pieces.front().xLo == 0.0;
            std::vector<std::pair<double, bool>> bounds;  // (quarter angle, singular)
            for (const auto& pc : body.curve->pieces) bounds.push_back({pc.phiLo, false});
            bounds.push_back({body.curve->arc.phiLo, false});
            bounds.push_back({0.0, hasFlatPoint});
            bounds.push_back({M_PI / 2, false});
            for (auto [b, sing] : bounds)
                for (double image : {b, M_PI - b, M_PI + b, 2.0 * M_PI - b}) {
                    const double tau = body.gammaAt(normalizeAngle(image)).point.dot(u);
                    const double at = std::fabs(tau);
                    if (at > 1e-13 * T_ && at < T_ * (1.0 - 1e-12)) {
                        cuts.push_back(at);
                        if (sing) singular.push_back(at);
                    } else if (sing && at <= 1e-13 * T_) {
                        singular.push_back(0.0);  // kink sits at the center plane
                    }
                }
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end(),
                               [&](double a, double b) { return std::fabs(a - b) < 1e-13 * T_; }),
                   cuts.end());

        // base grid: spans between cuts, long spans subdivided
        std::vector<double> grid;
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double a = cuts[i], b = cuts[i + 1];
            const int sub = std::max(1, static_cast<int>(std::ceil((b - a) / (0.25 * T_))));
            for (int j = 0; j < sub; ++j) grid.push_back(a + (b - a) * j / sub);
        }
        {
            // grade the last span toward the cap at T; the remaining stub
            // contributes below 1e-16 and is dropped
            const double a = cuts.back();
            double gap = T_ - a;
            const int sub = std::max(1, static_cast<int>(std::ceil(gap / (0.25 * T_))));
            for (int j = 0; j < sub; ++j) grid.push_back(a + gap * j / sub);
            double lo = T_ - gap / sub;
            while (T_ - lo > 4e-11 * T_) {
                grid.push_back(lo);
                lo = T_ - 0.5 * (T_ - lo);
            }
            grid.push_back(lo);
            grid.push_back(T_ * (1.0 - 1e-11));
        }
        // two-sided geometric grading around flat-point heights
        for (double c : singular) {
            flatHeight_ = c;
            for (double off = 0.25 * T_; off > 4e-11 * T_; off *= 0.5) {
                if (c - off > 1e-13 * T_) grid.push_back(c - off);
                if (c + off < T_ * (1.0 - 1e-11)) grid.push_back(c + off);
            }
        }
        std::sort(grid.begin(), grid.end());
        grid.erase(std::unique(grid.begin(), grid.end(),
                               [&](double a, double b) { return std::fabs(a - b) < 2e-11 * T_; }),
                   grid.end());

        panels_.clear();
        panels_.reserve(grid.size());
        for (size_t i = 0; i + 1 < grid.size(); ++i) {
            if (grid[i + 1] - grid[i] < 1e-18 * T_) continue;
            panels_.push_back(LegendrePanel::project(lambda, grid[i], grid[i + 1]));
        }
    }

    double theta_ = 0.0;
    double T_ = 0.0;
    double flatHeight_ = -1.0;
    std::vector<LegendrePanel> panels_;
};

/// Cache of profiles keyed by direction; directions of integer frequencies
/// are reduced exactly so sublattice rays share one profile.
class ProfileCache {
  public:
    explicit ProfileCache(const geo::ConvexBody& body, size_t capacity = 4096)
        : body_(body), capacity_(capacity) {}

    std::shared_ptr<const ChordProfile> forAngle(double theta) {
        const uint64_t key = angleKey(theta);
        {
            std::lock_guard<std::mutex> lock(mtx_);
            auto it = map_.find(key);
            if (it != map_.end()) return it->second;
        }
        auto p = std::make_shared<const ChordProfile>(body_, theta);
        std::lock_guard<std::mutex> lock(mtx_);
        if (map_.size() >= capacity_) map_.clear();  // coarse eviction; profiles are cheap to rebuild
        map_.emplace(key, p);
        return p;
    }

    std::shared_ptr<const ChordProfile> forFrequency(long long m1, long long m2) {
        return forAngle(std::atan2(static_cast<double>(m2), static_cast<double>(m1)));
    }

    const geo::ConvexBody& body() const { return body_; }

  private:
    static uint64_t angleKey(double theta) {
        uint64_t bits;
        static_assert(sizeof(bits) == sizeof(theta));
        std::memcpy(&bits, &theta, sizeof(bits));
        return bits;
    }

    const geo::ConvexBody& body_;
    size_t capacity_;
    std::unordered_map<uint64_t, std::shared_ptr<const ChordProfile>> map_;
    std::mutex mtx_;
};

}  // namespace disclab::fourier

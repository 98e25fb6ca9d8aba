#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "disclab/bounds/cm.hpp"
#include "disclab/bounds/phi.hpp"
#include "disclab/discrepancy/counting.hpp"
#include "disclab/fourier/regime.hpp"

namespace disclab::bounds {

/// Rectangle-sweep parameters from equalizing the two admissibility caps
/// (unit constants, exact power laws):
///   X = N^((1+e)(beta+2)/(3beta+2)), Y = N^((1+e)2beta/(3beta+2)),
///   Z = N^(-(1+e)(4beta+4)/(3beta+2)); X Y = N^(1+e).
struct XYZParams {
    double N = 0.0, beta = 0.0, epsTilde = 0.0;
    double X = 0.0, Y = 0.0, Z = 0.0;
};

inline XYZParams xyzParams(double N, double beta, double epsTilde) {
    if (!(N >= 2.0)) throw std::invalid_argument("xyzParams: need N >= 2");
    if (!(beta > 1.0 && beta <= 2.0)) throw std::invalid_argument("xyzParams: beta in (1, 2]");
    if (!(epsTilde >= 0.0 && epsTilde <= 1.0)) throw std::invalid_argument("xyzParams: epsTilde in [0, 1]");
    XYZParams p;
    p.N = N;
    p.beta = beta;
    p.epsTilde = epsTilde;
    const double s = (1.0 + epsTilde) / (3.0 * beta + 2.0);
    p.X = std::pow(N, s * (beta + 2.0));
    p.Y = std::pow(N, s * 2.0 * beta);
    p.Z = std::pow(N, -s * (4.0 * beta + 4.0));
    return p;
}

struct DominationReport {
    double worstSlack = 0.0;   // max of Z Phi(m) / allowed(m)
    long long scanned = 0;
    long long nonzeroPhi = 0;
    Vec2 worstAt{};
};

/// Scan all lattice m with |m| in [rhoLo, min(rhoHi, X)] and check
/// Z Phi(m) <= |m|^(-2-2/beta) in the flat sector (angle within 1/10 of the
/// flat normal) and Z Phi(m) <= |m|^(-3) otherwise; reports the worst slack
/// constant absorbed by the paper's implicit constant.
inline DominationReport verifyDomination(const PhiSpec& spec, const XYZParams& xyz, double beta,
                                         const fourier::RegimeWindow& window,
                                         long long pointBudget = 10000000) {
    window.validate();
    const double rhoLo = window.rhoLo;
    const double rhoHi = std::min(window.rhoHi, xyz.X);
    DominationReport rep;
    const long long top = static_cast<long long>(std::floor(rhoHi));
    for (long long m2 = -top; m2 <= top; ++m2) {
        for (long long m1 = -top; m1 <= top; ++m1) {
            const double r2 = static_cast<double>(m1) * m1 + static_cast<double>(m2) * m2;
            if (r2 < rhoLo * rhoLo || r2 > rhoHi * rhoHi) continue;
            if (++rep.scanned > pointBudget)
                throw BudgetError("verifyDomination: scan budget exceeded");
            const double phi = phiWeight(spec, m1, m2);
            if (phi == 0.0) continue;  // trivially dominated
            ++rep.nonzeroPhi;
            const double rho = std::sqrt(r2);
            const double ang = std::atan2(static_cast<double>(m2), static_cast<double>(m1));
            const bool flatSector = distToPiMultiple(ang + M_PI / 2.0) <= 0.1;
            const double allowed = flatSector ? std::pow(rho, -2.0 - 2.0 / beta) : std::pow(rho, -3.0);
            const double slack = xyz.Z * phi / allowed;
            if (slack > rep.worstSlack) {
                rep.worstSlack = slack;
                rep.worstAt = {static_cast<double>(m1), static_cast<double>(m2)};
            }
        }
    }
    return rep;
}

struct WitnessRecord {
    double phiWeightedSum = 0.0;   // Z sum |S(m)|^2 Phi(m) over the sweep support
    double cmFloorPerOmega = 0.0;  // |R| N / 4 - 2 pi (rho1^2 + 1) N^2
    double phiWeightedFloor = 0.0; // Z * (1/5) * cmFloorPerOmega
    bool vacuous = false;
    bool conditional = true;       // interpretation against D2 needs the window domination
    long long support = 0;
};

/// Lower-bound witness: evaluates Z sum_m |S(m)|^2 Phi(m) exactly over the
/// finite sweep support, alongside the Cassels-Montgomery floor. The sweep
/// sum dominates Z * (1/5) * (|R| N / 4 - 2 pi (rho1^2+1) N^2), the
/// omega-integrated floor.
inline WitnessRecord lowerBoundWitness(const PhiSpec& spec, const XYZParams& xyz,
                                       const disc::PointSet& ps, long long pointBudget = 10000000) {
    spec.validate();
    WitnessRecord rec;
    const double N = static_cast<double>(ps.size());
    const double reach = phiReach(spec);
    const long long top = static_cast<long long>(std::floor(reach)) + 1;
    KahanSum acc;
    long long scanned = 0;
    for (long long m2 = -top; m2 <= top; ++m2)
        for (long long m1 = -top; m1 <= top; ++m1) {
            if (++scanned > pointBudget) throw BudgetError("lowerBoundWitness: scan budget exceeded");
            const double phi = phiWeight(spec, m1, m2);
            if (phi == 0.0) continue;
            ++rec.support;
            acc.add(phi * disc::expSumNorm2(ps, m1, m2));
        }
    rec.phiWeightedSum = xyz.Z * acc.value();
    const double areaR = spec.X * spec.Y;
    rec.cmFloorPerOmega = areaR * N / 4.0 - 2.0 * M_PI * (spec.rho1 * spec.rho1 + 1.0) * N * N;
    rec.phiWeightedFloor = xyz.Z * 0.2 * rec.cmFloorPerOmega;
    rec.vacuous = rec.cmFloorPerOmega <= 0.0;
    return rec;
}

}  // namespace disclab::bounds

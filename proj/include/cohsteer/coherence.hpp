#pragma once

#include <array>

#include "cohsteer/states.hpp"

namespace cohsteer {

// Reference bases are the Pauli eigenbases, ordered cyclically x -> y -> z -> x.
enum class PauliAxis { X, Y, Z };

inline constexpr std::array<PauliAxis, 3> kAllAxes{PauliAxis::X, PauliAxis::Y, PauliAxis::Z};

PauliAxis cyclic_shift(PauliAxis axis, int steps);
const ComplexMatrix& pauli(PauliAxis axis);
const char* axis_name(PauliAxis axis);

using Ket2 = std::array<cplx, 2>;

// Fixed analytic eigenvectors: x {|D>, |A>}, y {|R>, |L>}, z {|H>, |V>}.
// Outcome 0 carries eigenvalue +1. These are constants, never recomputed
// numerically, so basis phases and ordering are unambiguous.
const Ket2& axis_eigenvector(PauliAxis axis, int outcome);

enum class CoherenceMeasure { L1C, REC, SIC };

inline constexpr std::array<CoherenceMeasure, 3> kAllMeasures{
    CoherenceMeasure::L1C, CoherenceMeasure::REC, CoherenceMeasure::SIC};

const char* measure_name(CoherenceMeasure m);  // "l1c", "rec", "sic"

// Full dephasing in the axis eigenbasis.
DensityMatrix dephase(const DensityMatrix& rho, PauliAxis axis);

// Sum of off-diagonal moduli in the axis eigenbasis.
double l1_coherence(const DensityMatrix& rho, PauliAxis axis);

// S(dephased) - S(rho), in bits.
double rel_entropy_coherence(const DensityMatrix& rho, PauliAxis axis);

// -tr([sqrt(rho), sigma_axis]^2) / 2.
double skew_info_coherence(const DensityMatrix& rho, PauliAxis axis);

double coherence(const DensityMatrix& rho, PauliAxis axis, CoherenceMeasure m);

}  // namespace cohsteer

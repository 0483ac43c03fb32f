#pragma once
#include <Eigen/Dense>
#include <complex>

#include "cavrep/gates.hpp"

namespace cavrep::states {

// Two-qubit density matrix in the computational basis |00>,|01>,|10>,|11>.
using Matrix4 = Eigen::Matrix4cd;
// Two-pair (four-qubit) register; basis index = 8*q0 + 4*q1 + 2*q2 + q3.
using Matrix16 = Eigen::Matrix<std::complex<double>, 16, 16>;

enum class Bell { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

Eigen::Vector4cd bell_vector(Bell b);
Matrix4 bell_state(Bell b);
Matrix4 maximally_mixed();

// Werner state: weight F on |Phi+><Phi+| and (1-F)/3 on each other Bell state.
Matrix4 werner(double fidelity);

// Bell-diagonal state with explicit weights (must be non-negative, sum 1).
Matrix4 bell_diagonal(double phi_plus, double phi_minus, double psi_plus, double psi_minus);

struct BellDecomposition {
    double phi_plus = 0, phi_minus = 0, psi_plus = 0, psi_minus = 0;
    double residual = 0; // probability mass outside the Bell-diagonal part
};
BellDecomposition decompose(const Matrix4& rho);

// <target|rho|target>, real, in [0,1]. Throws std::invalid_argument for a
// state violating hermiticity/trace/positivity tolerances.
double bell_fidelity(const Matrix4& rho, Bell target);

// Projection onto the Werner family keeping the Phi+ weight. Idempotent.
Matrix4 to_werner(const Matrix4& rho);

// Validates hermiticity (1e-12), unit trace (1e-12) and positivity
// (eigenvalues >= -1e-10); throws std::invalid_argument on failure.
void check_state(const Matrix4& rho);
bool is_physical(const Matrix4& rho);

// Depolarizing gate-noise channel on a full two-qubit state:
// rho -> F'*rho + (1-F')*I/4, with gate_fidelity = F' + (1-F')/4.
// gate_fidelity must lie in [1/4, 1].
Matrix4 depolarize(const Matrix4& rho, double gate_fidelity);

// Same channel applied to qubits (qa, qb) of a two-pair register:
// rho -> F'*rho + (1-F') * Tr_{qa,qb}(rho) (x) I/4 (slots restored in place).
Matrix16 depolarize_pair(const Matrix16& rho, int qa, int qb, double gate_fidelity);

Matrix16 kron(const Matrix4& left, const Matrix4& right);

// Partial trace over qubits (qa, qb) of a 4-qubit register; the remaining two
// qubits keep their original relative order.
Matrix4 partial_trace_pair(const Matrix16& rho, int qa, int qb);

struct SwapResult {
    Matrix4 state;       // outcome-averaged post-correction state of the outer pair
    double success_prob; // heralded gate success probability
};

// Entanglement swap at the shared middle station. `left` spans qubits (A,B),
// `right` spans (C,D); a noisy CNOT(B->C) + Hadamard(B) Bell measurement on
// (B,C) is performed, every outcome is corrected perfectly on D, and the
// outcome-averaged state of (A,D) is returned.
SwapResult entanglement_swap(const Matrix4& left, const Matrix4& right, const gates::GateModel& gate);

enum class PurifyVariant { Standard, Modified };

struct PurifyResult {
    Matrix4 state;       // renormalized kept pair after an accepted heralding outcome
    double herald_prob;  // probability of landing in the accepted outcome set
    double success_prob; // herald_prob * gate.success_prob^2 (one gate per station)
};

// One entanglement-pumping round: bilateral CNOT (kept pair controls, fresh
// pair targets) with gate noise on both sides, measurement of the fresh pair,
// post-selection on {00,11} (Standard) or {11} only (Modified).
PurifyResult purify(const Matrix4& keep, const Matrix4& fresh, const gates::GateModel& gate,
                    PurifyVariant variant);

std::string variant_name(PurifyVariant v);
PurifyVariant variant_from_name(const std::string& s);

} // namespace cavrep::states

#include "cavrep/states.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "cavrep/errors.hpp"

namespace cavrep::states {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kEigTol = -1e-10;

using Matrix2 = Eigen::Matrix2cd;

Matrix2 pauli_x() {
    Matrix2 m;
    m << 0, 1, 1, 0;
    return m;
}

Matrix2 pauli_z() {
    Matrix2 m;
    m << 1, 0, 0, -1;
    return m;
}

Matrix2 hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix2 m;
    m << s, s, s, -s;
    return m;
}

// Embed a single-qubit operator acting on qubit q of a 4-qubit register.
Matrix16 embed_one(const Matrix2& u, int q) {
    Matrix16 out = Matrix16::Zero();
    const int shift = 3 - q;
    for (int r = 0; r < 16; ++r) {
        const int rb = (r >> shift) & 1;
        const int rest = r & ~(1 << shift);
        for (int sb = 0; sb < 2; ++sb) {
            const int c = rest | (sb << shift);
            out(r, c) += u(rb, sb);
        }
    }
    return out;
}

// Embed a two-qubit operator acting on qubits (qa, qb); qa supplies the
// high-order bit of the operator's 2-qubit index.
Matrix16 embed_two(const Eigen::Matrix4cd& u, int qa, int qb) {
    Matrix16 out = Matrix16::Zero();
    const int sa = 3 - qa;
    const int sb = 3 - qb;
    for (int r = 0; r < 16; ++r) {
        const int ra = (r >> sa) & 1;
        const int rb = (r >> sb) & 1;
        const int rest = r & ~(1 << sa) & ~(1 << sb);
        const int ridx = 2 * ra + rb;
        for (int cidx = 0; cidx < 4; ++cidx) {
            const int ca = (cidx >> 1) & 1;
            const int cb = cidx & 1;
            const int c = rest | (ca << sa) | (cb << sb);
            out(r, c) = u(ridx, cidx);
        }
    }
    return out;
}

Eigen::Matrix4cd cnot4() {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = 1; // |00> -> |00>
    m(1, 1) = 1; // |01> -> |01>
    m(2, 3) = 1; // |11> -> |10>
    m(3, 2) = 1; // |10> -> |11>
    return m;
}

Matrix16 projector_bit(int q, int value) {
    Matrix2 p = Matrix2::Zero();
    p(value, value) = 1;
    return embed_one(p, q);
}

Matrix4 hermitized(const Matrix4& m) { return 0.5 * (m + m.adjoint()); }

double depolarize_weight(double gate_fidelity) {
    if (!(gate_fidelity >= 0.25 - 1e-12 && gate_fidelity <= 1.0 + 1e-12)) {
        throw std::invalid_argument("gate fidelity outside [1/4, 1] for depolarizing channel");
    }
    return (4.0 * gate_fidelity - 1.0) / 3.0;
}

} // namespace

Eigen::Vector4cd bell_vector(Bell b) {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    switch (b) {
        case Bell::PhiPlus: v(0) = s; v(3) = s; break;
        case Bell::PhiMinus: v(0) = s; v(3) = -s; break;
        case Bell::PsiPlus: v(1) = s; v(2) = s; break;
        case Bell::PsiMinus: v(1) = s; v(2) = -s; break;
    }
    return v;
}

Matrix4 bell_state(Bell b) {
    const Eigen::Vector4cd v = bell_vector(b);
    return v * v.adjoint();
}

Matrix4 maximally_mixed() { return Matrix4::Identity() * 0.25; }

Matrix4 werner(double fidelity) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
        throw std::invalid_argument("Werner fidelity outside [0,1]");
    }
    const double r = (1.0 - fidelity) / 3.0;
    return bell_diagonal(fidelity, r, r, r);
}

Matrix4 bell_diagonal(double phi_plus, double phi_minus, double psi_plus, double psi_minus) {
    const double w[4] = {phi_plus, phi_minus, psi_plus, psi_minus};
    const Bell b[4] = {Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus};
    Matrix4 out = Matrix4::Zero();
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (w[i] < -1e-12) throw std::invalid_argument("negative Bell weight");
        out += w[i] * bell_state(b[i]);
        sum += w[i];
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("Bell weights do not sum to 1");
    return hermitized(out);
}

BellDecomposition decompose(const Matrix4& rho) {
    BellDecomposition d;
    d.phi_plus = bell_fidelity(rho, Bell::PhiPlus);
    d.phi_minus = bell_fidelity(rho, Bell::PhiMinus);
    d.psi_plus = bell_fidelity(rho, Bell::PsiPlus);
    d.psi_minus = bell_fidelity(rho, Bell::PsiMinus);
    double res = 1.0 - (d.phi_plus + d.phi_minus + d.psi_plus + d.psi_minus);
    d.residual = (std::abs(res) < 1e-12) ? 0.0 : res;
    return d;
}

void check_state(const Matrix4& rho) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermTol) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(rho.trace().real() - 1.0) > kTraceTol || std::abs(rho.trace().imag()) > kTraceTol) {
        throw std::invalid_argument("density matrix trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix4> es(hermitized(rho), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < kEigTol) {
        throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
}

bool is_physical(const Matrix4& rho) {
    try {
        check_state(rho);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

double bell_fidelity(const Matrix4& rho, Bell target) {
    check_state(rho);
    const Eigen::Vector4cd v = bell_vector(target);
    double f = (v.adjoint() * rho * v)(0, 0).real();
    if (f < 0.0 && f > -1e-12) f = 0.0;
    if (f > 1.0 && f < 1.0 + 1e-12) f = 1.0;
    return f;
}

Matrix4 to_werner(const Matrix4& rho) { return werner(bell_fidelity(rho, Bell::PhiPlus)); }

Matrix4 depolarize(const Matrix4& rho, double gate_fidelity) {
    const double fp = depolarize_weight(gate_fidelity);
    return hermitized(fp * rho + (1.0 - fp) * rho.trace().real() * 0.25 * Matrix4::Identity());
}

Matrix16 kron(const Matrix4& left, const Matrix4& right) {
    Matrix16 out;
    for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c)
            for (int b = 0; b < 4; ++b)
                for (int d = 0; d < 4; ++d) out(4 * a + b, 4 * c + d) = left(a, c) * right(b, d);
    return out;
}

Matrix4 partial_trace_pair(const Matrix16& rho, int qa, int qb) {
    int rem[2];
    int nrem = 0;
    for (int q = 0; q < 4; ++q) {
        if (q != qa && q != qb) rem[nrem++] = q;
    }
    const int sa = 3 - qa, sb = 3 - qb, s0 = 3 - rem[0], s1 = 3 - rem[1];
    Matrix4 out = Matrix4::Zero();
    for (int i = 0; i < 4; ++i) {
        const int i0 = (i >> 1) & 1, i1 = i & 1;
        for (int jv = 0; jv < 4; ++jv) {
            const int j0 = (jv >> 1) & 1, j1 = jv & 1;
            std::complex<double> acc = 0.0;
            for (int t = 0; t < 4; ++t) {
                const int ta = (t >> 1) & 1, tb = t & 1;
                const int r = (i0 << s0) | (i1 << s1) | (ta << sa) | (tb << sb);
                const int c = (j0 << s0) | (j1 << s1) | (ta << sa) | (tb << sb);
                acc += rho(r, c);
            }
            out(i, jv) = acc;
        }
    }
    return out;
}

Matrix16 depolarize_pair(const Matrix16& rho, int qa, int qb, double gate_fidelity) {
    const double fp = depolarize_weight(gate_fidelity);
    const Matrix4 rest = partial_trace_pair(rho, qa, qb);
    int rem[2];
    int nrem = 0;
    for (int q = 0; q < 4; ++q) {
        if (q != qa && q != qb) rem[nrem++] = q;
    }
    const int sa = 3 - qa, sb = 3 - qb, s0 = 3 - rem[0], s1 = 3 - rem[1];
    Matrix16 junk = Matrix16::Zero();
    for (int i = 0; i < 4; ++i) {
        const int i0 = (i >> 1) & 1, i1 = i & 1;
        for (int jv = 0; jv < 4; ++jv) {
            const int j0 = (jv >> 1) & 1, j1 = jv & 1;
            for (int t = 0; t < 4; ++t) {
                const int ta = (t >> 1) & 1, tb = t & 1;
                const int r = (i0 << s0) | (i1 << s1) | (ta << sa) | (tb << sb);
                const int c = (j0 << s0) | (j1 << s1) | (ta << sa) | (tb << sb);
                junk(r, c) += rest(i, jv) * 0.25;
            }
        }
    }
    return fp * rho + (1.0 - fp) * junk;
}

SwapResult entanglement_swap(const Matrix4& left, const Matrix4& right,
                             const gates::GateModel& gate) {
    check_state(left);
    check_state(right);
    Matrix16 rho = kron(left, right);

    // Bell measurement circuit on the inner pair (qubits 1, 2): noisy
    // CNOT(1->2) followed by an ideal Hadamard on qubit 1 and a computational
    // measurement of both qubits.
    const Matrix16 ucnot = embed_two(cnot4(), 1, 2);
    rho = ucnot * rho * ucnot.adjoint();
    rho = depolarize_pair(rho, 1, 2, gate.fidelity());
    const Matrix16 uh = embed_one(hadamard(), 1);
    rho = uh * rho * uh.adjoint();

    const Matrix2 X = pauli_x();
    const Matrix2 Z = pauli_z();
    Matrix4 averaged = Matrix4::Zero();
    for (int b = 0; b < 2; ++b) {
        for (int k = 0; k < 2; ++k) {
            const Matrix16 proj = projector_bit(1, b) * projector_bit(2, k);
            const Matrix16 collapsed = proj * rho * proj.adjoint();
            Matrix4 outer = partial_trace_pair(collapsed, 1, 2); // qubits (0, 3)
            Matrix2 corr = Matrix2::Identity();
            if (k == 1) corr = X * corr;
            if (b == 1) corr = corr * Z; // product X^k Z^b: Z acts first
            Eigen::Matrix4cd c4 = Eigen::Matrix4cd::Zero();
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    if ((r >> 1) == (c >> 1)) c4(r, c) = corr(r & 1, c & 1);
            averaged += (c4 * outer * c4.adjoint()).eval();
        }
    }
    averaged = hermitized(averaged);
    const double tr = averaged.trace().real();
    if (tr <= 1e-15) throw InternalError("entanglement swap produced a zero-trace state");
    averaged /= tr;
    return {averaged, gate.success_prob};
}

PurifyResult purify(const Matrix4& keep, const Matrix4& fresh, const gates::GateModel& gate,
                    PurifyVariant variant) {
    check_state(keep);
    check_state(fresh);
    Matrix16 rho = kron(keep, fresh); // keep on (0,1), fresh on (2,3)

    // Bilateral CNOTs: station A couples qubits (0,2), station B couples
    // (1,3); each gate carries its own depolarizing noise.
    const Matrix16 ua = embed_two(cnot4(), 0, 2);
    rho = ua * rho * ua.adjoint();
    rho = depolarize_pair(rho, 0, 2, gate.fidelity());
    const Matrix16 ub = embed_two(cnot4(), 1, 3);
    rho = ub * rho * ub.adjoint();
    rho = depolarize_pair(rho, 1, 3, gate.fidelity());

    Matrix4 kept = Matrix4::Zero();
    double herald = 0.0;
    for (int m2 = 0; m2 < 2; ++m2) {
        for (int m3 = 0; m3 < 2; ++m3) {
            const bool accepted = (variant == PurifyVariant::Standard) ? (m2 == m3)
                                                                       : (m2 == 1 && m3 == 1);
            if (!accepted) continue;
            const Matrix16 proj = projector_bit(2, m2) * projector_bit(3, m3);
            const Matrix16 collapsed = proj * rho * proj.adjoint();
            kept += partial_trace_pair(collapsed, 2, 3);
            herald += collapsed.trace().real();
        }
    }
    if (herald <= 1e-15) throw InternalError("purification heralding probability vanished");
    kept = hermitized(kept) / herald;
    return {kept, herald, herald * gate.success_prob * gate.success_prob};
}

std::string variant_name(PurifyVariant v) {
    return v == PurifyVariant::Standard ? "standard" : "modified";
}

PurifyVariant variant_from_name(const std::string& s) {
    if (s == "standard") return PurifyVariant::Standard;
    if (s == "modified") return PurifyVariant::Modified;
    throw ConfigError("unknown purification variant: " + s);
}

} // namespace cavrep::states

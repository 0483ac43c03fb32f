#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <complex>
#include <vector>

#include "cavrep/gates.hpp"
#include "cavrep/states.hpp"

using namespace cavrep;
using states::Matrix16;
using states::Matrix4;
using C = std::complex<double>;

namespace {

// ---------------------------------------------------------------------------
// Independent circuit oracle. Operators are built as explicit basis
// permutations / embeddings and the depolarizing channel is realized in Kraus
// form (uniform two-qubit Pauli twirl), so none of the library's embedding or
// partial-trace machinery is reused here.
// ---------------------------------------------------------------------------

int bit_of(int index, int qubit) { return (index >> (3 - qubit)) & 1; }

int with_bit(int index, int qubit, int value) {
    const int mask = 1 << (3 - qubit);
    return value ? (index | mask) : (index & ~mask);
}

Matrix16 oracle_kron(const Matrix4& left, const Matrix4& right) {
    Matrix16 out = Matrix16::Zero();
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) out(i, j) = left(i >> 2, j >> 2) * right(i & 3, j & 3);
    return out;
}

Matrix16 oracle_cnot(int ctrl, int tgt) {
    Matrix16 u = Matrix16::Zero();
    for (int i = 0; i < 16; ++i) {
        const int j = bit_of(i, ctrl) ? with_bit(i, tgt, 1 - bit_of(i, tgt)) : i;
        u(j, i) = 1.0;
    }
    return u;
}

Matrix16 oracle_hadamard(int qubit) {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix16 u = Matrix16::Zero();
    for (int i = 0; i < 16; ++i) {
        const int b = bit_of(i, qubit);
        u(with_bit(i, qubit, 0), i) += s;
        u(with_bit(i, qubit, 1), i) += b ? -s : s;
    }
    return u;
}

Matrix16 embed_single(int qubit, const Eigen::Matrix2cd& op) {
    Matrix16 u = Matrix16::Zero();
    for (int i = 0; i < 16; ++i)
        for (int b = 0; b < 2; ++b) u(with_bit(i, qubit, b), i) += op(b, bit_of(i, qubit));
    return u;
}

std::array<Eigen::Matrix2cd, 4> paulis() {
    Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd x, y, z;
    x << 0, 1, 1, 0;
    y << 0, C(0, -1), C(0, 1), 0;
    z << 1, 0, 0, -1;
    return {id, x, y, z};
}

// Uniform Pauli twirl on (qa, qb): equivalent to replacing the pair with I/4
// at weight (1 - w), w = (4f - 1)/3.
Matrix16 oracle_depolarize(const Matrix16& rho, int qa, int qb, double gate_fidelity) {
    const double w = (4.0 * gate_fidelity - 1.0) / 3.0;
    const auto p = paulis();
    Matrix16 acc = Matrix16::Zero();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const Matrix16 u = embed_single(qa, p[a]) * embed_single(qb, p[b]);
            acc += u * rho * u.adjoint();
        }
    return w * rho + (1.0 - w) / 16.0 * acc;
}

struct OracleSwap {
    Matrix4 state;
    double success;
};

OracleSwap oracle_swap(const Matrix4& left, const Matrix4& right, const gates::GateModel& g) {
    Matrix16 rho = oracle_kron(left, right);
    const Matrix16 cnot = oracle_cnot(1, 2);
    rho = cnot * rho * cnot.adjoint();
    rho = oracle_depolarize(rho, 1, 2, g.fidelity());
    const Matrix16 h = oracle_hadamard(1);
    rho = h * rho * h.adjoint();

    Eigen::Matrix2cd x, z;
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    Matrix4 sum = Matrix4::Zero();
    for (int b = 0; b < 2; ++b)
        for (int k = 0; k < 2; ++k) {
            Matrix4 red = Matrix4::Zero();
            for (int a = 0; a < 2; ++a)
                for (int d = 0; d < 2; ++d)
                    for (int a2 = 0; a2 < 2; ++a2)
                        for (int d2 = 0; d2 < 2; ++d2) {
                            const int row = ((a << 3) | (b << 2) | (k << 1) | d);
                            const int col = ((a2 << 3) | (b << 2) | (k << 1) | d2);
                            red(2 * a + d, 2 * a2 + d2) += rho(row, col);
                        }
            Eigen::Matrix2cd corr = Eigen::Matrix2cd::Identity();
            if (k) corr = x * corr;
            if (b) corr = corr * z;
            Matrix4 c4 = Matrix4::Zero();
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    if ((r >> 1) == (c >> 1)) c4(r, c) = corr(r & 1, c & 1);
            sum += c4 * red * c4.adjoint();
        }
    OracleSwap out;
    out.state = sum / sum.trace().real();
    out.success = g.success_prob;
    return out;
}

struct OraclePurify {
    Matrix4 state;
    double herald;
    double success;
};

OraclePurify oracle_purify(const Matrix4& keep, const Matrix4& fresh, const gates::GateModel& g,
                           states::PurifyVariant variant) {
    Matrix16 rho = oracle_kron(keep, fresh);
    const Matrix16 c02 = oracle_cnot(0, 2);
    rho = c02 * rho * c02.adjoint();
    rho = oracle_depolarize(rho, 0, 2, g.fidelity());
    const Matrix16 c13 = oracle_cnot(1, 3);
    rho = c13 * rho * c13.adjoint();
    rho = oracle_depolarize(rho, 1, 3, g.fidelity());

    std::vector<std::pair<int, int>> accepted;
    if (variant == states::PurifyVariant::Standard)
        accepted = {{0, 0}, {1, 1}};
    else
        accepted = {{1, 1}};

    Matrix4 sum = Matrix4::Zero();
    for (auto [m2, m3] : accepted) {
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int a2 = 0; a2 < 2; ++a2)
                    for (int b2 = 0; b2 < 2; ++b2) {
                        const int row = ((a << 3) | (b << 2) | (m2 << 1) | m3);
                        const int col = ((a2 << 3) | (b2 << 2) | (m2 << 1) | m3);
                        sum(2 * a + b, 2 * a2 + b2) += rho(row, col);
                    }
    }
    OraclePurify out;
    out.herald = sum.trace().real();
    out.state = sum / out.herald;
    out.success = out.herald * g.success_prob * g.success_prob;
    return out;
}

// Bell labels as (phase, parity) bit pairs for the XOR-convolution oracle.
int bell_code(states::Bell b) {
    switch (b) {
    case states::Bell::PhiPlus: return 0b00;
    case states::Bell::PhiMinus: return 0b10;
    case states::Bell::PsiPlus: return 0b01;
    case states::Bell::PsiMinus: return 0b11;
    }
    return 0;
}

std::array<double, 4> bell_weights(const Matrix4& rho) {
    std::array<double, 4> w{};
    w[bell_code(states::Bell::PhiPlus)] = states::bell_fidelity(rho, states::Bell::PhiPlus);
    w[bell_code(states::Bell::PhiMinus)] = states::bell_fidelity(rho, states::Bell::PhiMinus);
    w[bell_code(states::Bell::PsiPlus)] = states::bell_fidelity(rho, states::Bell::PsiPlus);
    w[bell_code(states::Bell::PsiMinus)] = states::bell_fidelity(rho, states::Bell::PsiMinus);
    return w;
}

double matrix_distance(const Matrix4& a, const Matrix4& b) { return (a - b).cwiseAbs().maxCoeff(); }

} // namespace

TEST_CASE("bell states are orthonormal, physical projectors") {
    const std::array<states::Bell, 4> all = {states::Bell::PhiPlus, states::Bell::PhiMinus,
                                             states::Bell::PsiPlus, states::Bell::PsiMinus};
    for (auto bi : all) {
        const auto vi = states::bell_vector(bi);
        CHECK(std::abs(vi.norm() - 1.0) < 1e-14);
        for (auto bj : all) {
            const double overlap = std::abs(states::bell_vector(bj).dot(vi));
            if (bi == bj)
                CHECK(overlap == doctest::Approx(1.0).epsilon(1e-14));
            else
                CHECK(overlap < 1e-14);
        }
        const Matrix4 rho = states::bell_state(bi);
        CHECK(states::is_physical(rho));
        CHECK(states::bell_fidelity(rho, bi) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("werner and bell_diagonal round-trip through decompose") {
    const Matrix4 w = states::werner(0.82);
    CHECK(states::is_physical(w));
    const auto d = states::decompose(w);
    CHECK(d.phi_plus == doctest::Approx(0.82).epsilon(1e-13));
    CHECK(d.phi_minus == doctest::Approx(0.06).epsilon(1e-12));
    CHECK(d.psi_plus == doctest::Approx(0.06).epsilon(1e-12));
    CHECK(d.psi_minus == doctest::Approx(0.06).epsilon(1e-12));
    CHECK(d.residual < 1e-12);

    const Matrix4 bd = states::bell_diagonal(0.7, 0.1, 0.15, 0.05);
    const auto d2 = states::decompose(bd);
    CHECK(d2.phi_minus == doctest::Approx(0.1).epsilon(1e-13));
    CHECK(d2.psi_plus == doctest::Approx(0.15).epsilon(1e-13));

    CHECK_THROWS(states::bell_diagonal(0.9, 0.3, -0.1, -0.1));
}

TEST_CASE("maximally mixed state has uniform bell weights") {
    const Matrix4 mm = states::maximally_mixed();
    const auto w = bell_weights(mm);
    for (double x : w) CHECK(x == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("depolarize is identity at fidelity one and mixes toward I/4") {
    const Matrix4 rho = states::werner(0.9);
    CHECK(matrix_distance(states::depolarize(rho, 1.0), rho) < 1e-14);
    const Matrix4 fully = states::depolarize(rho, 0.25);
    CHECK(matrix_distance(fully, states::maximally_mixed()) < 1e-13);
    // Linear interpolation of the Phi+ weight: F' * F + (1 - F') / 4.
    const double f = 0.9, g = 0.95;
    const double w = (4.0 * g - 1.0) / 3.0;
    CHECK(states::bell_fidelity(states::depolarize(rho, g), states::Bell::PhiPlus) ==
          doctest::Approx(w * f + (1.0 - w) / 4.0).epsilon(1e-13));
    CHECK_THROWS(states::depolarize(rho, 0.2));
    CHECK_THROWS(states::depolarize(rho, 1.1));
}

TEST_CASE("kron and partial trace invert each other") {
    const Matrix4 a = states::werner(0.8);
    const Matrix4 b = states::bell_diagonal(0.55, 0.2, 0.15, 0.1);
    const Matrix16 joint = states::kron(a, b);
    CHECK(matrix_distance(states::partial_trace_pair(joint, 2, 3), a) < 1e-13);
    CHECK(matrix_distance(states::partial_trace_pair(joint, 0, 1), b) < 1e-13);
    CHECK((joint - oracle_kron(a, b)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("depolarize_pair agrees with the Kraus-form oracle") {
    const Matrix16 joint = states::kron(states::werner(0.75), states::werner(0.95));
    for (auto [qa, qb] : std::vector<std::pair<int, int>>{{1, 2}, {0, 2}, {1, 3}}) {
        const Matrix16 lib = states::depolarize_pair(joint, qa, qb, 0.9);
        const Matrix16 ora = oracle_depolarize(joint, qa, qb, 0.9);
        CHECK((lib - ora).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("entanglement swap matches the brute-force circuit oracle") {
    const std::vector<gates::GateModel> gate_models = {
        gates::perfect_gate(), gates::gate1(100.0, 2 * 3.14159265358979323846 * 6e6)};
    for (const auto& g : gate_models) {
        for (double f : {0.5, 0.7, 0.9, 1.0}) {
            const Matrix4 left = states::werner(f);
            const Matrix4 right = states::werner(f);
            const auto lib = states::entanglement_swap(left, right, g);
            const auto ora = oracle_swap(left, right, g);
            CHECK(matrix_distance(lib.state, ora.state) < 1e-10);
            CHECK(lib.success_prob == doctest::Approx(ora.success).epsilon(1e-12));
            CHECK(states::is_physical(lib.state));
        }
        // Asymmetric inputs as well.
        const auto lib = states::entanglement_swap(states::werner(0.85),
                                                   states::bell_diagonal(0.6, 0.25, 0.1, 0.05), g);
        const auto ora = oracle_swap(states::werner(0.85),
                                     states::bell_diagonal(0.6, 0.25, 0.1, 0.05), g);
        CHECK(matrix_distance(lib.state, ora.state) < 1e-10);
    }
}

TEST_CASE("swap of bell-diagonal pairs follows the XOR convolution") {
    const std::array<double, 4> p = {0.62, 0.18, 0.13, 0.07}; // indexed by (phase,parity) code
    const std::array<double, 4> q = {0.55, 0.05, 0.3, 0.1};
    const Matrix4 left = states::bell_diagonal(p[0b00], p[0b10], p[0b01], p[0b11]);
    const Matrix4 right = states::bell_diagonal(q[0b00], q[0b10], q[0b01], q[0b11]);
    const auto res = states::entanglement_swap(left, right, gates::perfect_gate());
    const auto w = bell_weights(res.state);
    for (int c = 0; c < 4; ++c) {
        double expect = 0.0;
        for (int a = 0; a < 4; ++a) expect += p[a] * q[a ^ c];
        CHECK(w[c] == doctest::Approx(expect).epsilon(1e-11));
    }
}

TEST_CASE("swap of werner pairs: frozen output fidelities") {
    const std::vector<std::pair<double, double>> frozen = {
        {0.5, 1.0 / 3.0}, {0.7, 0.52}, {0.9, 0.81333333333333333}, {1.0, 1.0}};
    for (auto [f, expect] : frozen) {
        const auto res =
            states::entanglement_swap(states::werner(f), states::werner(f), gates::perfect_gate());
        CHECK(states::bell_fidelity(res.state, states::Bell::PhiPlus) ==
              doctest::Approx(expect).epsilon(1e-11));
    }
}

TEST_CASE("purify matches the brute-force circuit oracle") {
    const std::vector<gates::GateModel> gate_models = {
        gates::perfect_gate(), gates::gate1(100.0, 2 * 3.14159265358979323846 * 6e6)};
    const Matrix4 keep = states::werner(0.7);
    const Matrix4 fresh = states::werner(0.85);
    for (const auto& g : gate_models) {
        for (auto variant : {states::PurifyVariant::Standard, states::PurifyVariant::Modified}) {
            const auto lib = states::purify(keep, fresh, g, variant);
            const auto ora = oracle_purify(keep, fresh, g, variant);
            CHECK(matrix_distance(lib.state, ora.state) < 1e-10);
            CHECK(lib.herald_prob == doctest::Approx(ora.herald).epsilon(1e-11));
            CHECK(lib.success_prob == doctest::Approx(ora.success).epsilon(1e-11));
            CHECK(states::is_physical(lib.state));
        }
    }
}

TEST_CASE("purify of bell-diagonal pairs follows the parity-block convolution") {
    const std::array<double, 4> p = {0.66, 0.14, 0.12, 0.08};
    const std::array<double, 4> q = {0.58, 0.22, 0.11, 0.09};
    const Matrix4 keep = states::bell_diagonal(p[0b00], p[0b10], p[0b01], p[0b11]);
    const Matrix4 fresh = states::bell_diagonal(q[0b00], q[0b10], q[0b01], q[0b11]);

    auto mass = [](const std::array<double, 4>& w, int parity) {
        return w[parity] + w[0b10 | parity];
    };
    const double herald_std = mass(p, 0) * mass(q, 0) + mass(p, 1) * mass(q, 1);

    const auto std_res =
        states::purify(keep, fresh, gates::perfect_gate(), states::PurifyVariant::Standard);
    CHECK(std_res.herald_prob == doctest::Approx(herald_std).epsilon(1e-12));

    const auto mod_res =
        states::purify(keep, fresh, gates::perfect_gate(), states::PurifyVariant::Modified);
    CHECK(mod_res.herald_prob == doctest::Approx(herald_std / 2.0).epsilon(1e-12));
    CHECK(matrix_distance(std_res.state, mod_res.state) < 1e-11);

    const auto w = bell_weights(std_res.state);
    for (int phase = 0; phase < 2; ++phase)
        for (int parity = 0; parity < 2; ++parity) {
            double expect = 0.0;
            for (int bp = 0; bp < 2; ++bp)
                expect += p[((phase ^ bp) << 1) | parity] * q[(bp << 1) | parity];
            CHECK(w[(phase << 1) | parity] ==
                  doctest::Approx(expect / herald_std).epsilon(1e-11));
        }
}

TEST_CASE("purify of werner pairs: frozen herald and output fidelity") {
    const auto res = states::purify(states::werner(0.8), states::werner(0.8),
                                    gates::perfect_gate(), states::PurifyVariant::Standard);
    CHECK(res.herald_prob == doctest::Approx(0.76888888888888889).epsilon(1e-12));
    CHECK(states::bell_fidelity(res.state, states::Bell::PhiPlus) ==
          doctest::Approx(0.83815028901734104).epsilon(1e-12));

    const auto res9 = states::purify(states::werner(0.9), states::werner(0.9),
                                     gates::perfect_gate(), states::PurifyVariant::Standard);
    CHECK(res9.herald_prob == doctest::Approx(0.87555555555555556).epsilon(1e-12));
    // Pumping at F = 0.9 improves the pair.
    CHECK(states::bell_fidelity(res9.state, states::Bell::PhiPlus) > 0.9);
}

TEST_CASE("purify success carries two heralded-gate factors") {
    const auto g = gates::gate1(100.0, 2 * 3.14159265358979323846 * 6e6);
    REQUIRE(g.success_prob == doctest::Approx(0.4).epsilon(1e-14));
    const auto res =
        states::purify(states::werner(0.9), states::werner(0.9), g, states::PurifyVariant::Standard);
    CHECK(res.success_prob == doctest::Approx(res.herald_prob * 0.16).epsilon(1e-12));
}

TEST_CASE("to_werner keeps the phi+ weight and is idempotent") {
    const Matrix4 rho = states::bell_diagonal(0.7, 0.2, 0.06, 0.04);
    const Matrix4 w = states::to_werner(rho);
    CHECK(states::bell_fidelity(w, states::Bell::PhiPlus) ==
          doctest::Approx(0.7).epsilon(1e-13));
    const auto d = states::decompose(w);
    CHECK(d.phi_minus == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(d.psi_plus == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(matrix_distance(states::to_werner(w), w) < 1e-13);
}

TEST_CASE("check_state rejects non-physical matrices") {
    Matrix4 bad = states::werner(0.9);
    bad(0, 0) += 0.2; // trace off
    CHECK_THROWS_AS(states::check_state(bad), std::invalid_argument);
    CHECK_FALSE(states::is_physical(bad));

    Matrix4 neg = Matrix4::Zero();
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(states::check_state(neg), std::invalid_argument);

    Matrix4 nonherm = states::werner(0.9);
    nonherm(0, 3) += C(0.0, 0.1);
    CHECK_THROWS_AS(states::check_state(nonherm), std::invalid_argument);
}

TEST_CASE("variant names round-trip") {
    CHECK(states::variant_name(states::PurifyVariant::Standard) == "standard");
    CHECK(states::variant_name(states::PurifyVariant::Modified) == "modified");
    CHECK(states::variant_from_name("modified") == states::PurifyVariant::Modified);
    CHECK_THROWS(states::variant_from_name("bogus"));
}

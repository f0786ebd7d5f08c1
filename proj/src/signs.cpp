#include "nqforge/signs.hpp"

namespace nqforge::signs {

namespace {

long long sum_before(const std::vector<int>& x, int i) {
    long long s = 0;
    for (int j = 0; j < i; ++j) s += x[j];
    return s;
}

long long sum_after(const std::vector<int>& x, int i) {
    long long s = 0;
    for (std::size_t j = i + 1; j < x.size(); ++j) s += x[j];
    return s;
}

}  // namespace

int transfer_sign(const std::vector<int>& degrees) {
    return suspension_power_sign(static_cast<int>(degrees.size())) * suspension_tuple_sign(degrees);
}

int anti_shuffle_sign(const Permutation& sigma, const std::vector<int>& degrees) {
    return koszul_sign(sigma, degrees);
}

int algebra_shuffle_sign(int i, int j, const Permutation& sigma, const std::vector<int>& degrees) {
    return minus_one_pow(static_cast<long long>(i) * (j - 1)) * chi_sign(sigma, degrees);
}

int ce_bracket_sign(int k) { return minus_one_pow(k); }

int ce_anchor_first(int k) { return minus_one_pow(k); }

int ce_anchor_second(int k, int a1, int a2) { return minus_one_pow(static_cast<long long>(a1) * a2 + k); }

int ce_anchor_slot(int k, const std::vector<int>& degrees, int i) {
    return minus_one_pow(k + degrees[i] * sum_before(degrees, i));
}

int signs1_first(int eps) { return -eps; }

int signs2_term1(const std::vector<int>& x, int i, int k) {
    long long rest = sum_before(x, i) + sum_after(x, i);
    return minus_one_pow(x[i] * sum_after(x, i) + k * rest);
}

int signs2_term2(const std::vector<int>& x, int i, int k) {
    return minus_one_pow(k + x[i] * (sum_before(x, i) + k + 1));
}

int signs2_term3(const std::vector<int>& x, int i, int k) {
    return minus_one_pow(k + 1 + x[i] * (sum_before(x, i) + k + 1));
}

int signs2_term4(const std::vector<int>& x, int i, int k) {
    return minus_one_pow(x[i] * (sum_before(x, i) + k + 1));
}

int signs4_prefactor(const std::vector<int>& x, int k) {
    return minus_one_pow(static_cast<long long>(x[0] + k) * (x[1] + x[2]));
}

int signs4_inner_first(const std::vector<int>& x) { return minus_one_pow(x[1]); }

int signs4_inner_second(const std::vector<int>& x) { return minus_one_pow(static_cast<long long>(x[1] + 1) * x[2]); }

int shifted_ce_sign(int r, int s) { return minus_one_pow(static_cast<long long>(r - s + 1) * (s - 1)); }

int morphism_anchor_row(const std::vector<int>& x, int i) { return minus_one_pow(x[i] * sum_before(x, i) + 1); }

int pm1(int k, int eps) { return minus_one_pow(k) * eps; }

int pm2(const std::vector<int>& x, int i, int k) { return minus_one_pow(x[i] * (sum_before(x, i) + k) + 1); }

int pm3(int k, int eps) { return minus_one_pow(k) * eps; }

int shifted_morphism_lhs_sign(int s, int r, const Permutation& sigma, const std::vector<int>& y) {
    return minus_one_pow(static_cast<long long>(s) * (r - 1)) * chi_sign(sigma, y);
}

int shifted_morphism_rhs_sign(const std::vector<std::vector<int>>& blocks, const std::vector<int>& y) {
    Permutation sigma;
    for (const auto& b : blocks) sigma.insert(sigma.end(), b.begin(), b.end());
    long long r = static_cast<long long>(blocks.size());
    long long e = r * (r - 1) / 2;
    for (long long j = 0; j < r; ++j) {
        long long later = 0, yj = 0;
        for (long long l = j + 1; l < r; ++l) later += static_cast<long long>(blocks[l].size());
        for (int i : blocks[j]) yj += y[i];
        long long rj = r - 1 - j;  // r - j with j counted from 1
        e += static_cast<long long>(blocks[j].size()) * rj + yj * (rj + later);
    }
    return minus_one_pow(e) * chi_sign(sigma, y);
}

}  // namespace nqforge::signs

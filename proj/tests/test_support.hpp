#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <wmpinv/wmpinv.hpp>

namespace wmp::testing {

inline std::string fixture_path(const std::string& name) { return std::string(WMPINV_FIXTURE_DIR) + "/" + name; }

inline std::string read_fixture(const std::string& name)
{
    std::ifstream in(fixture_path(name), std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <Field T>
Matrix<T> load_fixture(const std::string& name)
{
    return convert_to<T>(parse_matrix(read_fixture(name)));
}

/// Random integer matrix with entries in [lo, hi].
template <Field T>
Matrix<T> random_int_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed, long lo = -9, long hi = 9)
{
    Rng rng(seed);
    Matrix<T> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = from_integer<T>(rng.uniform_int(lo, hi));
    return m;
}

/// A random instance: A, left weight M, right weight N.
template <Field T>
struct Instance {
    Matrix<T> a;
    Matrix<T> m;
    Matrix<T> n;
    std::size_t target_rank = 0;
};

/// Draws sizes in [1, max_dim]. A is B*C with inner dimension `r`, so its
/// rank is at most r; about half the instances are rank deficient, and some
/// of those get a copied or zeroed column so the zero branch appears early.
template <Field T>
Instance<T> random_instance(std::uint64_t seed, std::size_t max_dim, long lo = -5, long hi = 5)
{
    Rng rng(seed);
    const auto rows = static_cast<std::size_t>(rng.uniform_int(1, static_cast<long>(max_dim)));
    const auto cols = static_cast<std::size_t>(rng.uniform_int(1, static_cast<long>(max_dim)));
    const std::size_t full = std::min(rows, cols);
    const bool deficient = full > 1 && rng.uniform_int(0, 1) == 1;
    const std::size_t r =
        deficient ? static_cast<std::size_t>(rng.uniform_int(1, static_cast<long>(full) - 1)) : full;
    Instance<T> inst;
    inst.target_rank = r;
    inst.a = random_int_matrix<T>(rows, r, split_seed(seed, 10), lo, hi) *
             random_int_matrix<T>(r, cols, split_seed(seed, 11), lo, hi);
    if (deficient && cols > 1) {
        const auto tweak = rng.uniform_int(0, 3);
        const auto j = static_cast<std::size_t>(rng.uniform_int(1, static_cast<long>(cols) - 1));
        for (std::size_t i = 0; i < rows; ++i) {
            if (tweak == 1) inst.a(i, j) = inst.a(i, 0);
            if (tweak == 2) inst.a(i, j) = field_traits<T>::zero();
        }
    }
    inst.m = random_spd<T>(rows, split_seed(seed, 12), -4, 4);
    inst.n = random_spd<T>(cols, split_seed(seed, 13), -4, 4);
    return inst;
}

} // namespace wmp::testing

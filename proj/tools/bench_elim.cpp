// Benchmark of the elimination kernels: serial reference vs OpenMP row
// updates, on dense and sparse instances. Run with OMP_NUM_THREADS set to
// compare scaling.

#include <omp.h>

#include <chrono>
#include <iostream>
#include <random>

#include "mfk/linalg.hpp"

using namespace mfk;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

QMat random_dense(std::size_t n, std::size_t m, std::mt19937_64& rng) {
    QMat a(n, m);
    std::uniform_int_distribution<int> coeff(-9, 9);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) a.at(i, j) = coeff(rng);
    return a;
}

std::vector<SparseVec> random_sparse(std::size_t n, std::size_t m, double fill,
                                     std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> coeff(1, 9);
    std::vector<SparseVec> rows(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (u(rng) < fill) rows[i].nz.emplace_back(static_cast<int>(j), coeff(rng));
    return rows;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n = argc > 1 ? std::stoul(argv[1]) : 160;
    std::cout << "threads: " << omp_get_max_threads() << "\n";
    std::mt19937_64 rng(20240517);

    {
        QMat a = random_dense(n, n + n / 2, rng);
        auto t0 = Clock::now();
        EchelonForm serial = rref_serial(a);
        double ts = seconds_since(t0);
        t0 = Clock::now();
        EchelonForm parallel = rref_parallel(a);
        double tp = seconds_since(t0);
        std::cout << "dense " << n << "x" << (n + n / 2) << ": serial " << ts << "s, parallel "
                  << tp << "s, identical: " << (serial.mat == parallel.mat ? "yes" : "NO")
                  << ", rank " << serial.rank() << "\n";
    }

    {
        std::size_t rows = 8 * n, cols = 3 * n;
        auto data = random_sparse(rows, cols, 8.0 / cols, rng);
        auto t0 = Clock::now();
        SparseEliminator serial(static_cast<int>(cols), false);
        serial.add_rows(data);
        double ts = seconds_since(t0);
        t0 = Clock::now();
        SparseEliminator parallel(static_cast<int>(cols), true);
        parallel.add_rows(data);
        double tp = seconds_since(t0);
        bool same = serial.rows() == parallel.rows();
        std::cout << "sparse " << rows << "x" << cols << " (~8 nnz/row): serial " << ts
                  << "s, parallel " << tp << "s, identical: " << (same ? "yes" : "NO")
                  << ", rank " << serial.rank() << "\n";
    }
    return 0;
}

#pragma once

#include <cmath>
#include <cstddef>
#include <functional>

#include "zm/types.hpp"

namespace zm {

// Number of worker threads to use; 0 means hardware concurrency.
unsigned resolve_threads(unsigned requested);

// Runs fn(begin, end) on disjoint chunks of [0, n). Chunks are assigned in
// index order, so callers that write into preallocated slots get
// deterministic output regardless of scheduling.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& fn);

// Same, but hands each chunk its worker index (contiguous from 0). Callers
// that keep per-worker accumulators merge them in index order and stay
// deterministic for a fixed thread count.
void parallel_for_workers(
    std::size_t n, unsigned threads,
    const std::function<void(unsigned worker, std::size_t, std::size_t)>& fn);

// Mergeable mean/variance accumulator (Chan's update), used to combine
// per-worker Monte Carlo statistics deterministically.
struct RunningMoments {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    void merge(const RunningMoments& o) {
        if (o.n == 0) return;
        if (n == 0) { *this = o; return; }
        double d = o.mean - mean;
        std::size_t nt = n + o.n;
        mean += d * static_cast<double>(o.n) / static_cast<double>(nt);
        m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) /
                         static_cast<double>(nt);
        n = nt;
    }
    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
    // Standard error of the mean.
    double sem() const {
        return n > 1 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
    }
};

// Complex-valued observable: independent real/imag accumulators.
struct RunningMomentsC {
    RunningMoments re, im;
    void add(cplx z) { re.add(z.real()); im.add(z.imag()); }
    void merge(const RunningMomentsC& o) { re.merge(o.re); im.merge(o.im); }
    cplx mean() const { return {re.mean, im.mean}; }
    cplx sem() const { return {re.sem(), im.sem()}; }
};

}  // namespace zm

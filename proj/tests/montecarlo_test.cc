// Copyright 2026 The tpclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "gtest/gtest.h"
#include "tpclone/photonics.h"

using namespace tpclone;
using namespace tpclone::photonics;
using namespace std::complex_literals;

namespace {

const std::vector<double> kGrid{-60, -20, 0, 20, 60};

ScanOptions mc(uint64_t trials, uint64_t seed, unsigned threads = 1) {
    ScanOptions o;
    o.mode = ScanMode::MonteCarlo;
    o.trials = trials;
    o.seed = seed;
    o.threads = threads;
    return o;
}

bool within_3_sigma(uint64_t n, uint64_t trials, double p) {
    double sigma = std::sqrt(trials * p * (1 - p));
    return std::abs(static_cast<double>(n) - trials * p) <= 3 * sigma;
}

}  // namespace

TEST(montecarlo, same_seed_same_counts) {
    auto phi = PureState::qubit("S", 1, 1);
    auto a = hom_scan(phi, kGrid, mc(20000, 7));
    auto b = hom_scan(phi, kGrid, mc(20000, 7));
    auto c = hom_scan(phi, kGrid, mc(20000, 8));
    bool differs = false;
    for (size_t k = 0; k < kGrid.size(); k++) {
        ASSERT_EQ(a[k].n_A1A2, b[k].n_A1A2);
        ASSERT_EQ(a[k].n_A2B, b[k].n_A2B);
        ASSERT_EQ(a[k].trials, 20000u);
        differs |= a[k].n_A1A2 != c[k].n_A1A2;
    }
    ASSERT_TRUE(differs);
}

TEST(montecarlo, thread_count_does_not_change_counts) {
    auto phi = PureState::qubit("S", 1, 1i);
    auto one = hom_scan(phi, kGrid, mc(50000, 11, 1));
    for (unsigned threads : {2u, 3u, 8u}) {
        auto many = hom_scan(phi, kGrid, mc(50000, 11, threads));
        for (size_t k = 0; k < kGrid.size(); k++) {
            ASSERT_EQ(one[k].n_A1A2, many[k].n_A1A2);
            ASSERT_EQ(one[k].n_A2B, many[k].n_A2B);
        }
    }
    auto b1 = baseline_record(phi, mc(50000, 11, 1), kGrid.size());
    auto b4 = baseline_record(phi, mc(50000, 11, 4), kGrid.size());
    ASSERT_EQ(b1.n_A1A2, b4.n_A1A2);
}

TEST(montecarlo, exact_probabilities_travel_with_counts) {
    auto phi = PureState::qubit("S", 1, 0);
    auto exact = hom_scan(phi, kGrid, ScanOptions{});
    auto sampled = hom_scan(phi, kGrid, mc(1000, 3));
    for (size_t k = 0; k < kGrid.size(); k++) {
        ASSERT_EQ(exact[k].p_A1A2, sampled[k].p_A1A2);
        ASSERT_EQ(exact[k].p_A2B, sampled[k].p_A2B);
        ASSERT_EQ(exact[k].visibility, sampled[k].visibility);
    }
}

TEST(montecarlo, unbiased_over_seeds) {
    auto phi = PureState::qubit("S", 1, 1);
    constexpr uint64_t kTrials = 20000;
    constexpr int kSeeds = 30;
    std::vector<double> sum_a(kGrid.size()), sum_b(kGrid.size());
    int inside = 0, total = 0;
    std::vector<double> p_a, p_b;
    for (int s = 0; s < kSeeds; s++) {
        auto records = hom_scan(phi, kGrid, mc(kTrials, 1000 + s));
        for (size_t k = 0; k < kGrid.size(); k++) {
            const auto &r = records[k];
            sum_a[k] += r.n_A1A2;
            sum_b[k] += r.n_A2B;
            inside += within_3_sigma(r.n_A1A2, kTrials, r.p_A1A2);
            inside += within_3_sigma(r.n_A2B, kTrials, r.p_A2B);
            total += 2;
            if (s == 0) {
                p_a.push_back(r.p_A1A2);
                p_b.push_back(r.p_A2B);
            }
        }
    }
    // Pooled means over all seeds sit inside 3 sigma of the exact values.
    for (size_t k = 0; k < kGrid.size(); k++) {
        ASSERT_TRUE(within_3_sigma(static_cast<uint64_t>(sum_a[k]), kTrials * kSeeds, p_a[k])) << k;
        ASSERT_TRUE(within_3_sigma(static_cast<uint64_t>(sum_b[k]), kTrials * kSeeds, p_b[k])) << k;
    }
    ASSERT_GE(inside, total * 28 / 30);
}

TEST(montecarlo, rejects_zero_trials) {
    auto phi = PureState::qubit("S", 1, 0);
    ASSERT_THROW(hom_scan(phi, kGrid, mc(0, 1)), std::invalid_argument);
    ASSERT_THROW(baseline_record(phi, mc(0, 1), 0), std::invalid_argument);
}

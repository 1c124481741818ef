#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cstrength/common.hpp"

namespace cstrength {

constexpr int kNumFeatures = 8;
constexpr int kNumColumns = 9;  // 8 features + fc

// Canonical column order of the CSV schema (UCI "Concrete Compressive
// Strength" layout): 7 content shares in kg/m3, age in days, then fc in MPa.
extern const std::array<const char*, kNumColumns> kColumnNames;

// One mixture: the 8 independent variables.
struct Mixture {
    double cement = 0;
    double blast_furnace_slag = 0;
    double fly_ash = 0;
    double water = 0;
    double superplasticizer = 0;
    double coarse_aggregate = 0;
    double fine_aggregate = 0;
    double age_of_curing = 0;  // days, >= 1

    std::array<double, kNumFeatures> features() const {
        return {cement, blast_furnace_slag, fly_ash,        water,
                superplasticizer, coarse_aggregate, fine_aggregate, age_of_curing};
    }
    static Mixture from_features(const std::array<double, kNumFeatures>& f) {
        return {f[0], f[1], f[2], f[3], f[4], f[5], f[6], f[7]};
    }
    // Content shares only (no age), in column order 0..6.
    std::array<double, 7> contents() const {
        return {cement, blast_furnace_slag, fly_ash, water, superplasticizer, coarse_aggregate, fine_aggregate};
    }
    static Mixture from_contents(const std::array<double, 7>& c, double age) {
        return {c[0], c[1], c[2], c[3], c[4], c[5], c[6], age};
    }

    // Throws IoError when a content share is negative or age < 1 / non-finite.
    void validate() const;
};

struct Sample {
    Mixture mixture;
    double fc = 0;  // MPa, finite and non-negative
};

struct Dataset {
    std::vector<Sample> samples;
    std::string source_id;

    std::size_t size() const { return samples.size(); }
};

// Column accessor over the 9-column view (features then fc).
inline double column_value(const Sample& s, int col) {
    return col < kNumFeatures ? s.mixture.features()[static_cast<std::size_t>(col)] : s.fc;
}

struct SplitSets {
    Dataset train;  // T
    Dataset test;   // T^o
    std::uint64_t seed = 0;
};

struct ColumnStats {
    double min = 0, max = 0, mean = 0, sd = 0;  // population SD
};

struct StatsTable {
    std::array<ColumnStats, kNumColumns> columns;
};

// Per-feature standardizer fitted on the training set only.
struct Scaler {
    std::array<double, kNumFeatures> mean{};
    std::array<double, kNumFeatures> sd{};

    std::array<double, kNumFeatures> apply(const Mixture& m) const;
    Mixture inverse(const std::array<double, kNumFeatures>& z) const;
};

Dataset load_csv(const std::string& path);
void save_csv(const Dataset& ds, const std::string& path);

// Uniform random partition; |train| = round(train_fraction * N).
SplitSets split(const Dataset& ds, double train_fraction, std::uint64_t seed);

StatsTable summary_stats(const Dataset& ds);

// 9x9 symmetric correlation matrix over all columns including fc.
// Throws NumericError naming the column when one is constant.
std::array<std::array<double, kNumColumns>, kNumColumns> pearson_matrix(const Dataset& ds);

Scaler fit_scaler(const Dataset& train);

// Equal-width histogram of fc over [min, max]; last bin closed.
std::vector<int> fc_histogram(const Dataset& ds, int bins);

}  // namespace cstrength

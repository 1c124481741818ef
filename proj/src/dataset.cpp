#include "cstrength/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "cstrength/rng.hpp"

namespace cstrength {

const std::array<const char*, kNumColumns> kColumnNames = {
    "cement", "blast_furnace_slag", "fly_ash",        "water", "superplasticizer",
    "coarse_aggregate", "fine_aggregate",    "age_of_curing", "fc"};

void Mixture::validate() const {
    const auto f = features();
    for (int i = 0; i < kNumFeatures; ++i) {
        if (!std::isfinite(f[static_cast<std::size_t>(i)]))
            throw IoError(std::string("non-finite value in column '") + kColumnNames[static_cast<std::size_t>(i)] + "'");
    }
    for (int i = 0; i < 7; ++i) {
        if (f[static_cast<std::size_t>(i)] < 0.0)
            throw IoError(std::string("negative content share in column '") + kColumnNames[static_cast<std::size_t>(i)] + "'");
    }
    if (age_of_curing < 1.0) throw IoError("age_of_curing must be >= 1 day");
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_cell(const std::string& cell, std::size_t row, int col) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(cell, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    // allow trailing whitespace only
    while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
    if (cell.empty() || pos != cell.size())
        throw IoError("malformed numeric cell at row " + std::to_string(row) + ", column '" +
                      kColumnNames[static_cast<std::size_t>(col)] + "': \"" + cell + "\"");
    return v;
}

}  // namespace

Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw IoError("empty dataset file: " + path);
    const auto header = split_fields(line);
    if (header.size() != kNumColumns)
        throw IoError("expected " + std::to_string(kNumColumns) + " columns in header, got " +
                      std::to_string(header.size()) + " in " + path);

    Dataset ds;
    ds.source_id = path;
    std::size_t row = 1;  // header is row 0
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != kNumColumns)
            throw IoError("row " + std::to_string(row) + " has " + std::to_string(fields.size()) +
                          " fields, expected " + std::to_string(kNumColumns));
        std::array<double, kNumColumns> v{};
        for (int c = 0; c < kNumColumns; ++c)
            v[static_cast<std::size_t>(c)] = parse_cell(fields[static_cast<std::size_t>(c)], row, c);
        Sample s;
        s.mixture = Mixture::from_features({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]});
        s.fc = v[8];
        try {
            s.mixture.validate();
        } catch (const IoError& e) {
            throw IoError("row " + std::to_string(row) + ": " + e.what());
        }
        if (!std::isfinite(s.fc) || s.fc < 0.0)
            throw IoError("row " + std::to_string(row) + ": fc must be finite and non-negative");
        ds.samples.push_back(s);
        ++row;
    }
    if (ds.samples.empty()) throw IoError("dataset has zero rows: " + path);
    return ds;
}

void save_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write dataset file: " + path);
    for (int c = 0; c < kNumColumns; ++c) out << kColumnNames[static_cast<std::size_t>(c)] << (c + 1 < kNumColumns ? "," : "\n");
    char buf[64];
    for (const Sample& s : ds.samples) {
        const auto f = s.mixture.features();
        for (int c = 0; c < kNumFeatures; ++c) {
            std::snprintf(buf, sizeof buf, "%.10g", f[static_cast<std::size_t>(c)]);
            out << buf << ",";
        }
        std::snprintf(buf, sizeof buf, "%.10g", s.fc);
        out << buf << "\n";
    }
}

SplitSets split(const Dataset& ds, double train_fraction, std::uint64_t seed) {
    if (ds.size() < 2) throw IoError("dataset too small to split (need >= 2 samples)");
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw IoError("train_fraction must lie strictly between 0 and 1");

    const std::size_t n = ds.size();
    const auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    Rng rng(derive_seed(seed, 0));
    for (std::size_t i = n; i-- > 1;) {
        const std::size_t j = rng.below(i + 1);
        std::swap(idx[i], idx[j]);
    }

    std::vector<bool> in_train(n, false);
    for (std::size_t i = 0; i < n_train; ++i) in_train[idx[i]] = true;

    SplitSets out;
    out.seed = seed;
    out.train.source_id = ds.source_id + "#train";
    out.test.source_id = ds.source_id + "#test";
    for (std::size_t i = 0; i < n; ++i)
        (in_train[i] ? out.train : out.test).samples.push_back(ds.samples[i]);
    return out;
}

StatsTable summary_stats(const Dataset& ds) {
    if (ds.samples.empty()) throw IoError("summary_stats on empty dataset");
    StatsTable t;
    const double n = static_cast<double>(ds.size());
    for (int c = 0; c < kNumColumns; ++c) {
        double mn = column_value(ds.samples[0], c), mx = mn, sum = 0, sum2 = 0;
        for (const Sample& s : ds.samples) {
            const double v = column_value(s, c);
            mn = std::min(mn, v);
            mx = std::max(mx, v);
            sum += v;
        }
        const double mean = sum / n;
        for (const Sample& s : ds.samples) {
            const double d = column_value(s, c) - mean;
            sum2 += d * d;
        }
        t.columns[static_cast<std::size_t>(c)] = {mn, mx, mean, std::sqrt(sum2 / n)};
    }
    return t;
}

std::array<std::array<double, kNumColumns>, kNumColumns> pearson_matrix(const Dataset& ds) {
    if (ds.samples.empty()) throw IoError("pearson_matrix on empty dataset");
    const StatsTable t = summary_stats(ds);
    for (int c = 0; c < kNumColumns; ++c)
        if (t.columns[static_cast<std::size_t>(c)].sd == 0.0)
            throw NumericError(std::string("pearson coefficient undefined: column '") +
                               kColumnNames[static_cast<std::size_t>(c)] + "' is constant");

    const double n = static_cast<double>(ds.size());
    std::array<std::array<double, kNumColumns>, kNumColumns> m{};
    for (int i = 0; i < kNumColumns; ++i) {
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
        for (int j = i + 1; j < kNumColumns; ++j) {
            double cov = 0;
            for (const Sample& s : ds.samples)
                cov += (column_value(s, i) - t.columns[static_cast<std::size_t>(i)].mean) *
                       (column_value(s, j) - t.columns[static_cast<std::size_t>(j)].mean);
            cov /= n;
            const double r = cov / (t.columns[static_cast<std::size_t>(i)].sd * t.columns[static_cast<std::size_t>(j)].sd);
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = r;
            m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = r;
        }
    }
    return m;
}

Scaler fit_scaler(const Dataset& train) {
    if (train.samples.empty()) throw IoError("fit_scaler on empty dataset");
    const StatsTable t = summary_stats(train);
    Scaler s;
    for (int c = 0; c < kNumFeatures; ++c) {
        s.mean[static_cast<std::size_t>(c)] = t.columns[static_cast<std::size_t>(c)].mean;
        s.sd[static_cast<std::size_t>(c)] = t.columns[static_cast<std::size_t>(c)].sd;
        if (s.sd[static_cast<std::size_t>(c)] <= 0.0)
            throw NumericError(std::string("constant feature column '") + kColumnNames[static_cast<std::size_t>(c)] +
                               "' cannot be standardized");
    }
    return s;
}

std::array<double, kNumFeatures> Scaler::apply(const Mixture& m) const {
    const auto f = m.features();
    std::array<double, kNumFeatures> z{};
    for (int i = 0; i < kNumFeatures; ++i)
        z[static_cast<std::size_t>(i)] =
            (f[static_cast<std::size_t>(i)] - mean[static_cast<std::size_t>(i)]) / sd[static_cast<std::size_t>(i)];
    return z;
}

Mixture Scaler::inverse(const std::array<double, kNumFeatures>& z) const {
    std::array<double, kNumFeatures> f{};
    for (int i = 0; i < kNumFeatures; ++i)
        f[static_cast<std::size_t>(i)] =
            z[static_cast<std::size_t>(i)] * sd[static_cast<std::size_t>(i)] + mean[static_cast<std::size_t>(i)];
    return Mixture::from_features(f);
}

std::vector<int> fc_histogram(const Dataset& ds, int bins) {
    if (ds.samples.empty()) throw IoError("fc_histogram on empty dataset");
    const StatsTable t = summary_stats(ds);
    const double lo = t.columns[8].min, hi = t.columns[8].max;
    std::vector<int> counts(static_cast<std::size_t>(bins), 0);
    const double w = (hi - lo) / bins;
    for (const Sample& s : ds.samples) {
        int b = w > 0 ? static_cast<int>((s.fc - lo) / w) : 0;
        b = std::clamp(b, 0, bins - 1);
        ++counts[static_cast<std::size_t>(b)];
    }
    return counts;
}

}  // namespace cstrength

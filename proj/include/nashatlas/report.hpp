// Machine-readable verification reports and point-cloud output.
#ifndef NASHATLAS_REPORT_HPP
#define NASHATLAS_REPORT_HPP

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace nashatlas {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerificationReport {
    std::string check;
    std::string citation;
    std::string status = "pass";  // pass | fail | unsupported
    double max_error = 0.0;
    double tolerance = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;

    bool passed() const { return status == "pass"; }
};

inline nlohmann::json to_json(const VerificationReport& r) {
    // nlohmann::json orders keys alphabetically; the schema is stable across
    // checks by construction.
    return nlohmann::json{{"check", r.check},     {"citation", r.citation}, {"max_error", r.max_error},
                          {"samples", r.samples}, {"seed", r.seed},         {"status", r.status},
                          {"tolerance", r.tolerance}, {"wall_ms", r.wall_ms}};
}

inline nlohmann::json to_json(std::vector<VerificationReport> reports) {
    std::sort(reports.begin(), reports.end(),
              [](const VerificationReport& a, const VerificationReport& b) { return a.check < b.check; });
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    return arr;
}

// Stopwatch helper for filling wall_ms.
class Stopwatch {
  public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

// CSV cloud: one point per row, 17 significant digits, header row with
// coordinate names.
inline void emit_cloud(const std::vector<std::vector<double>>& points,
                       const std::vector<std::string>& names, const std::string& path) {
    for (const auto& p : points)
        if (p.size() != names.size()) throw IoError("emit_cloud: inconsistent point dimension");
    std::ofstream out(path);
    if (!out) throw IoError("emit_cloud: cannot open '" + path + "'");
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out << ",";
        out << names[i];
    }
    out << "\n";
    out << std::setprecision(17);
    for (const auto& p : points) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) out << ",";
            out << p[i];
        }
        out << "\n";
    }
    if (!out) throw IoError("emit_cloud: write failed for '" + path + "'");
}

inline std::vector<std::string> coordinate_names(const std::string& prefix, int count) {
    std::vector<std::string> names;
    for (int i = 1; i <= count; ++i) names.push_back(prefix + std::to_string(i));
    return names;
}

}  // namespace nashatlas

#endif

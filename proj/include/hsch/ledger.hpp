#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hsch {

// Per-run diagnostics table: one row per sampled time, fixed column set.
// Serialization is bit-exact (shortest round-trip formatting both ways).
class RunLedger {
public:
    RunLedger() = default;
    explicit RunLedger(std::vector<std::string> columns);

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<double>& times() const { return times_; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }

    void set_metadata(const std::string& key, const std::string& value);
    const std::vector<std::pair<std::string, std::string>>& metadata() const { return meta_; }

    // time must be strictly increasing; the row must be complete
    void append(double t, const std::vector<double>& row);

    void write_csv(std::ostream& os) const;
    static RunLedger read_csv(std::istream& is);

    std::string to_json() const;

    bool operator==(const RunLedger& o) const;

private:
    std::vector<std::string> columns_;
    std::vector<double> times_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::pair<std::string, std::string>> meta_;
};

// shortest round-trip decimal form of a double
std::string format_double(double x);

// FNV-1a over bytes, hex string (manifest hashing)
std::string fnv1a_hex(const std::string& bytes);

} // namespace hsch

#include "hsch/ledger.hpp"

#include <charconv>
#include <cstdio>
#include <ostream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace hsch {

std::string format_double(double x) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, p);
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

RunLedger::RunLedger(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void RunLedger::set_metadata(const std::string& key, const std::string& value) {
    meta_.emplace_back(key, value);
}

void RunLedger::append(double t, const std::vector<double>& row) {
    if (!times_.empty() && !(t > times_.back()))
        throw std::invalid_argument("RunLedger: times must be strictly increasing");
    if (row.size() != columns_.size())
        throw std::invalid_argument("RunLedger: incomplete row");
    times_.push_back(t);
    rows_.push_back(row);
}

void RunLedger::write_csv(std::ostream& os) const {
    for (const auto& [k, v] : meta_) os << "# " << k << "=" << v << "\n";
    os << "t";
    for (const std::string& c : columns_) os << "," << c;
    os << "\n";
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        os << format_double(times_[r]);
        for (double x : rows_[r]) os << "," << format_double(x);
        os << "\n";
    }
}

RunLedger RunLedger::read_csv(std::istream& is) {
    RunLedger led;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto sp = line.find(' ');
            const auto eq = line.find('=', sp);
            if (eq != std::string::npos)
                led.meta_.emplace_back(line.substr(sp + 1, eq - sp - 1), line.substr(eq + 1));
            continue;
        }
        std::stringstream ss(line);
        std::string tok;
        if (!have_header) {
            bool first = true;
            while (std::getline(ss, tok, ',')) {
                if (!first) led.columns_.push_back(tok);
                first = false;
            }
            have_header = true;
            continue;
        }
        std::vector<double> row;
        bool first = true;
        double t = 0.0;
        while (std::getline(ss, tok, ',')) {
            double x = 0.0;
            const auto* b = tok.data();
            std::from_chars(b, b + tok.size(), x);
            if (first)
                t = x;
            else
                row.push_back(x);
            first = false;
        }
        led.times_.push_back(t);
        led.rows_.push_back(std::move(row));
    }
    return led;
}

std::string RunLedger::to_json() const {
    nlohmann::json j;
    for (const auto& [k, v] : meta_) j["metadata"][k] = v;
    j["columns"] = columns_;
    j["t"] = times_;
    j["rows"] = rows_;
    return j.dump(2);
}

bool RunLedger::operator==(const RunLedger& o) const {
    return columns_ == o.columns_ && times_ == o.times_ && rows_ == o.rows_ &&
           meta_ == o.meta_;
}

} // namespace hsch

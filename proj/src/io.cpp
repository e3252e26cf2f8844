#include "qmut/io.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace qmut {

nlohmann::json json_from_int(const Int& x) {
    static const Int lo = Int(std::numeric_limits<long long>::min());
    static const Int hi = Int(std::numeric_limits<long long>::max());
    if (x >= lo && x <= hi) return static_cast<long long>(x);
    return x.str();
}

Int int_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
            throw InputError("not an integer: '" + j.get<std::string>() + "'");
        }
    }
    throw InputError("expected an integer or a decimal string");
}

nlohmann::json json_from_row(const std::vector<Int>& row) {
    nlohmann::json out = nlohmann::json::array();
    for (const Int& x : row) out.push_back(json_from_int(x));
    return out;
}

nlohmann::json json_from_mat(const Mat& m) {
    nlohmann::json out = nlohmann::json::array();
    for (int i = 0; i < m.size(); ++i) out.push_back(json_from_row(m.row(i)));
    return out;
}

Mat mat_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw InputError("expected a non-empty matrix");
    std::vector<std::vector<Int>> rows;
    for (const auto& jr : j) {
        if (!jr.is_array()) throw InputError("matrix rows must be arrays");
        std::vector<Int> row;
        for (const auto& je : jr) row.push_back(int_from_json(je));
        rows.push_back(std::move(row));
    }
    return Mat::from_rows(rows);
}

nlohmann::json json_from_indices(const std::vector<int>& w) {
    nlohmann::json out = nlohmann::json::array();
    for (int k : w) out.push_back(k + 1);
    return out;
}

std::vector<int> indices_from_json(const nlohmann::json& j, int n) {
    if (!j.is_array()) throw InputError("expected an array of vertex labels");
    std::vector<int> w;
    for (const auto& je : j) {
        if (!je.is_number_integer()) throw InputError("vertex labels must be integers");
        const long long v = je.get<long long>();
        if (v < 1 || v > n)
            throw InputError("vertex label " + std::to_string(v) + " out of range 1.." +
                             std::to_string(n));
        w.push_back(static_cast<int>(v) - 1);
    }
    return w;
}

nlohmann::json quiver_to_json(const ExchangeMatrix& b) {
    return {{"n", b.rank()}, {"b", json_from_mat(b.mat())}};
}

ExchangeMatrix quiver_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("b"))
        throw InputError("quiver JSON must be an object with keys \"n\" and \"b\"");
    if (!j["n"].is_number_integer()) throw InputError("\"n\" must be an integer");
    const long long n = j["n"].get<long long>();
    if (n < 1 || n > 64) throw InputError("\"n\" out of supported range 1..64");
    Mat m = mat_from_json(j["b"]);
    if (m.size() != static_cast<int>(n))
        throw InputError("\"b\" is " + std::to_string(m.size()) + "x" +
                         std::to_string(m.size()) + " but \"n\" is " + std::to_string(n));
    return ExchangeMatrix(std::move(m));
}

ExchangeMatrix builtin_markov() {
    return ExchangeMatrix(Mat::from_rows({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}}));
}

ExchangeMatrix builtin_q233() {
    return ExchangeMatrix(Mat::from_rows({{0, 2, -3}, {-2, 0, 3}, {3, -3, 0}}));
}

ExchangeMatrix load_quiver(const std::string& name_or_path) {
    if (name_or_path == "markov" || name_or_path == "M") return builtin_markov();
    if (name_or_path == "q233" || name_or_path == "Q") return builtin_q233();

    std::ifstream in(name_or_path);
    if (!in)
        throw InputError("cannot open quiver '" + name_or_path +
                         "' (not a built-in name and not a readable file)");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("invalid JSON in '" + name_or_path + "': " + e.what());
    }
    return quiver_from_json(j);
}

std::vector<int> parse_indices(const std::string& csv, int n) {
    std::vector<int> out;
    if (csv.empty()) return out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &pos);
        } catch (const std::exception&) {
            throw InputError("not a vertex label: '" + tok + "'");
        }
        while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
        if (pos != tok.size()) throw InputError("not a vertex label: '" + tok + "'");
        if (v < 1 || v > n)
            throw InputError("vertex label " + std::to_string(v) + " out of range 1.." +
                             std::to_string(n));
        out.push_back(static_cast<int>(v) - 1);
    }
    return out;
}

std::string format_indices(const std::vector<int>& w) {
    std::string out;
    for (std::size_t t = 0; t < w.size(); ++t) {
        if (t) out += ",";
        out += std::to_string(w[t] + 1);
    }
    return out;
}

std::string word_to_string(const Word& w) {
    std::string out;
    for (std::size_t t = 0; t < w.size(); ++t) {
        if (t) out += " ";
        out += std::to_string(w[t] + 1);
    }
    return out;
}

std::string digest64(const nlohmann::json& j) {
    const std::string s = j.dump();
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

void append_run_record(const std::string& path, const std::string& command,
                       const nlohmann::json& config, const std::string& digest, bool pass) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw InputError("cannot open run log '" + path + "' for append");
    const auto now = std::chrono::system_clock::now();
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch());
    nlohmann::json rec = {{"time", secs.count()},
                          {"command", command},
                          {"config", config},
                          {"digest", digest},
                          {"pass", pass}};
    out << rec.dump() << "\n";
}

}  // namespace qmut

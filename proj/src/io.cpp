#include "lh/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace lh::io {

namespace {

using Json = nlohmann::ordered_json;

// Input iterator that counts the newlines it has stepped over.
struct LineCountingIterator {
    using iterator_category = std::input_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    const char* p = nullptr;
    std::size_t* newlines = nullptr;

    reference operator*() const { return *p; }
    LineCountingIterator& operator++() {
        if (*p == '\n') ++*newlines;
        ++p;
        return *this;
    }
    LineCountingIterator operator++(int) {
        auto old = *this;
        ++*this;
        return old;
    }
    bool operator==(const LineCountingIterator& o) const { return p == o.p; }
    bool operator!=(const LineCountingIterator& o) const { return p != o.p; }
};

// JSON pointer of every key and container element, mapped to its line.
class LineIndex {
public:
    explicit LineIndex(const std::size_t* newlines) : newlines_(newlines) {}

    bool on_event(nlohmann::json::parse_event_t event, const Json& parsed) {
        using E = nlohmann::json::parse_event_t;
        switch (event) {
            case E::object_start:
            case E::array_start:
                note_element();
                frames_.push_back({event == E::array_start, 0, {}});
                break;
            case E::key:
                frames_.back().key = parsed.get<std::string>();
                lines_[path()] = line();
                break;
            case E::object_end:
            case E::array_end:
                frames_.pop_back();
                advance();
                break;
            case E::value:
                note_element();
                advance();
                break;
        }
        return true;
    }

    std::size_t line_of(std::string pointer) const {
        for (;;) {
            if (auto it = lines_.find(pointer); it != lines_.end()) return it->second;
            const auto cut = pointer.rfind('/');
            if (cut == std::string::npos || pointer.empty()) return 0;
            pointer.resize(cut);
        }
    }

private:
    struct Frame {
        bool array;
        std::size_t index;
        std::string key;
    };

    std::size_t line() const { return *newlines_ + 1; }

    std::string path() const {
        std::string out;
        for (const auto& f : frames_) out += "/" + (f.array ? std::to_string(f.index) : f.key);
        return out;
    }

    void note_element() {
        if (!frames_.empty() && frames_.back().array) lines_[path()] = line();
    }

    void advance() {
        if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
    }

    const std::size_t* newlines_;
    std::vector<Frame> frames_;
    std::map<std::string, std::size_t> lines_;
};

std::string format_message(const std::string& field, std::size_t line, const std::string& message) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += "field '" + field + "': ";
    return out + message;
}

std::string dump_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Reader {
    const LineIndex& index;

    [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
        throw FormatError(pointer, index.line_of(pointer), message);
    }

    const Json& require(const Json& obj, const std::string& base, const char* key) const {
        if (!obj.contains(key)) fail(base.empty() ? std::string("/") + key : base, std::string("missing \"") + key + "\"");
        return obj.at(key);
    }

    double number(const Json& v, const std::string& pointer) const {
        if (!v.is_number()) fail(pointer, "expected a number");
        return v.get<double>();
    }

    std::uint64_t natural(const Json& v, const std::string& pointer) const {
        if (!v.is_number_unsigned()) fail(pointer, "expected a non-negative integer");
        return v.get<std::uint64_t>();
    }
};

Json result_point(const CriticalPoint& p) {
    Json x = Json::array();
    for (Eigen::Index i = 0; i < p.x.size(); ++i) x.push_back({p.x[i].real(), p.x[i].imag()});
    Json lam = Json::array();
    for (Eigen::Index i = 0; i < p.lambda.size(); ++i) lam.push_back({p.lambda[i].real(), p.lambda[i].imag()});
    Json out;
    out["x"] = std::move(x);
    out["lambda"] = p.lambda.size() == 1 ? lam[0] : lam;
    out["residual"] = p.residual;
    out["is_real"] = p.is_real;
    out["objective"] = p.objective_value ? Json(*p.objective_value) : Json(nullptr);
    return out;
}

Json big_number(const degree::BigInt& v) {
    if (v >= 0 && v <= degree::BigInt(std::numeric_limits<std::uint64_t>::max())) {
        return Json(static_cast<std::uint64_t>(v));
    }
    return Json(v.str());
}

}  // namespace

FormatError::FormatError(std::string field, std::size_t line, const std::string& message)
    : std::runtime_error(format_message(field, line, message)), field_(std::move(field)), line_(line) {}

ProblemFile parse_problem(std::string_view text) {
    std::size_t newlines = 0;
    LineIndex index(&newlines);
    LineCountingIterator first{text.data(), &newlines};
    LineCountingIterator last{text.data() + text.size(), &newlines};
    Json root;
    try {
        root = Json::parse(first, last, [&](int, nlohmann::json::parse_event_t e, Json& parsed) {
            return index.on_event(e, parsed);
        });
    } catch (const Json::parse_error& e) {
        throw FormatError("", newlines + 1, std::string("malformed document: ") + e.what());
    }
    const Reader rd{index};
    if (!root.is_object()) rd.fail("", "document must be an object");

    static const std::set<std::string> known{"format", "n", "objective", "constraint", "seed"};
    for (const auto& [key, value] : root.items()) {
        if (!known.contains(key)) rd.fail("/" + key, "unknown key");
    }
    const Json& format = rd.require(root, "", "format");
    if (!format.is_number_unsigned() || format.get<std::uint64_t>() != 1) rd.fail("/format", "unsupported format (expected 1)");

    const std::uint64_t n = rd.natural(rd.require(root, "", "n"), "/n");
    if (n == 0) rd.fail("/n", "n must be positive");

    const Json& objective = rd.require(root, "", "objective");
    if (!objective.is_array()) rd.fail("/objective", "expected an array");
    if (objective.size() != n) {
        rd.fail("/objective", "expected " + std::to_string(n) + " entries, found " + std::to_string(objective.size()));
    }
    ProblemFile file;
    file.problem.u.resize(n);
    for (std::size_t i = 0; i < n; ++i) file.problem.u[i] = rd.number(objective[i], "/objective/" + std::to_string(i));

    const Json& constraint = rd.require(root, "", "constraint");
    if (!constraint.is_array() || constraint.empty()) rd.fail("/constraint", "expected a non-empty array of terms");
    file.problem.f = SparsePolynomial(n);
    std::set<Exponent> seen;
    for (std::size_t k = 0; k < constraint.size(); ++k) {
        const std::string base = "/constraint/" + std::to_string(k);
        const Json& term = constraint[k];
        if (!term.is_object()) rd.fail(base, "expected an object");
        for (const auto& [key, value] : term.items()) {
            if (key != "exponents" && key != "re" && key != "im") rd.fail(base + "/" + key, "unknown key");
        }
        const Json& ex = rd.require(term, base, "exponents");
        if (!ex.is_array() || ex.size() != n) rd.fail(base + "/exponents", "expected " + std::to_string(n) + " exponents");
        Exponent alpha(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t e = rd.natural(ex[i], base + "/exponents/" + std::to_string(i));
            if (e > std::numeric_limits<std::uint32_t>::max()) rd.fail(base + "/exponents/" + std::to_string(i), "exponent too large");
            alpha[i] = static_cast<std::uint32_t>(e);
        }
        if (!seen.insert(alpha).second) rd.fail(base + "/exponents", "duplicate exponent vector");
        const double re = rd.number(rd.require(term, base, "re"), base + "/re");
        const double im = term.contains("im") ? rd.number(term.at("im"), base + "/im") : 0.0;
        file.problem.f.add_term(alpha, cplx{re, im});
    }
    if (root.contains("seed")) file.seed = rd.natural(root.at("seed"), "/seed");

    try {
        file.problem.validate();
    } catch (const std::invalid_argument& e) {
        rd.fail("/constraint", e.what());
    }
    return file;
}

ProblemFile load_problem(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

std::string serialize_problem(const ProblemFile& file) {
    const auto& p = file.problem;
    std::string out = "{\n  \"format\": 1,\n  \"n\": " + std::to_string(p.dimension()) + ",\n  \"objective\": [";
    for (std::size_t i = 0; i < p.u.size(); ++i) out += (i ? ", " : "") + dump_number(p.u[i]);
    out += "],\n  \"constraint\": [\n";
    std::size_t k = 0;
    for (const auto& [alpha, c] : p.f.terms()) {
        out += "    {\"exponents\": [";
        for (std::size_t i = 0; i < alpha.size(); ++i) out += (i ? ", " : "") + std::to_string(alpha[i]);
        out += "], \"re\": " + dump_number(c.real()) + ", \"im\": " + dump_number(c.imag()) + "}";
        out += (++k < p.f.terms().size()) ? ",\n" : "\n";
    }
    out += "  ]";
    if (file.seed) out += ",\n  \"seed\": " + std::to_string(*file.seed);
    out += "\n}\n";
    return out;
}

std::string serialize_result(const SolveReport& report, const ResultOptions& opts) {
    Json out;
    out["format"] = 1;
    out["n"] = report.n;
    out["expected_count"] = report.expected_count ? big_number(*report.expected_count) : Json(nullptr);
    out["algebraic_degree_zero"] = report.algebraic_degree_zero;
    out["paths_tracked"] = report.paths_tracked;
    out["converged"] = report.n_converged;
    out["diverged"] = report.n_diverged;
    out["failed"] = report.n_failed;
    out["found"] = report.found.size();
    out["merges"] = report.merges;
    out["retracked"] = report.retracked;
    out["seed"] = opts.seed;
    out["threads"] = opts.threads;
    out["gamma"] = {report.gamma.real(), report.gamma.imag()};
    out["wall_time"] = report.wall_time;
    out["global_minimum"] = report.global_minimum ? Json(*report.global_minimum) : Json(nullptr);
    out["min_gradient_norm"] = report.min_gradient_norm ? Json(*report.min_gradient_norm) : Json(nullptr);
    out["warnings"] = report.warnings;
    Json points = Json::array();
    for (const auto& p : report.found) points.push_back(result_point(p));
    out["points"] = std::move(points);
    if (opts.include_paths) {
        Json paths = Json::array();
        for (const auto& p : report.paths) {
            Json rec;
            rec["status"] = std::string(to_string(p.status));
            rec["residual"] = std::isfinite(p.residual) ? Json(p.residual) : Json(nullptr);
            rec["steps"] = p.steps_taken;
            rec["rejected"] = p.steps_rejected;
            rec["final_t"] = p.final_t;
            paths.push_back(std::move(rec));
        }
        out["paths"] = std::move(paths);
    }
    return out.dump(2) + "\n";
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace lh::io

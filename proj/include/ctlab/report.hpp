#pragma once

/**
 * @file report.hpp
 * @brief Check results and machine-readable reports for the CLI and the
 *        verification suites.
 */

#include <algorithm>
#include <chrono>
#include <string>
#include <vector>

namespace ctlab {

enum class Status { pass, fail, finding };

struct Check {
    std::string name;
    Status status = Status::pass;
    std::string witness; // empty unless there is something to show
    long long elapsed_ms = 0;

    static Check passed(std::string n) { return {std::move(n), Status::pass, "", 0}; }
    static Check failed(std::string n, std::string w) {
        return {std::move(n), Status::fail, std::move(w), 0};
    }
    static Check found(std::string n, std::string w) {
        return {std::move(n), Status::finding, std::move(w), 0};
    }
};

struct Report {
    std::vector<Check> checks;
    std::chrono::steady_clock::time_point mark = std::chrono::steady_clock::now();

    // each check records the wall time since the previous one was added
    void add(Check c) {
        auto now = std::chrono::steady_clock::now();
        c.elapsed_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(now - mark).count();
        mark = now;
        checks.push_back(std::move(c));
    }

    void require(const std::string& name, bool ok, const std::string& witness = "") {
        add(ok ? Check::passed(name) : Check::failed(name, witness));
    }

    void note(const std::string& name, const std::string& witness) {
        add(Check::found(name, witness));
    }

    bool all_passed() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const Check& c) { return c.status != Status::fail; });
    }

    int failures() const {
        int n = 0;
        for (const auto& c : checks)
            if (c.status == Status::fail) ++n;
        return n;
    }

    void sort_canonical() {
        std::stable_sort(checks.begin(), checks.end(),
                         [](const Check& a, const Check& b) { return a.name < b.name; });
    }

    void merge(const Report& other, const std::string& prefix = "") {
        for (auto c : other.checks) {
            c.name = prefix + c.name;
            checks.push_back(std::move(c));
        }
    }
};

} // namespace ctlab

#ifndef PLSE_VERIFY_HPP
#define PLSE_VERIFY_HPP

#include <string>
#include <vector>

#include "plse/instance.hpp"

namespace plse {

struct VerifyReport {
    bool legal = false;
    int score = 0;  // filled cells in the certificate
    std::vector<std::string> problems;
};

// Checks a claimed solution grid against its instance: matching order, symbols
// in range, pre-filled cells preserved, and the Latin condition. The score is
// the number of filled cells.
inline VerifyReport verify_certificate(const PlsInstance& instance, const PlsInstance& certificate) {
    VerifyReport report;
    const int n = instance.order();
    if (certificate.order() != n) {
        report.problems.push_back("order mismatch: instance " + std::to_string(n) +
                                  ", certificate " + std::to_string(certificate.order()));
        return report;
    }

    auto cell_name = [](int r, int c) {
        return "(" + std::to_string(r) + "," + std::to_string(c) + ")";
    };

    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const Symbol expected = instance.at(r, c);
            if (expected != 0 && certificate.at(r, c) != expected)
                report.problems.push_back("pre-filled cell " + cell_name(r, c) + " altered: expected " +
                                          std::to_string(expected) + ", got " +
                                          std::to_string(certificate.at(r, c)));
        }

    std::vector<int> first_at(static_cast<std::size_t>(n) + 1);
    for (int r = 0; r < n; ++r) {
        std::fill(first_at.begin(), first_at.end(), -1);
        for (int c = 0; c < n; ++c) {
            const Symbol s = certificate.at(r, c);
            if (s == 0) continue;
            if (first_at[s] >= 0)
                report.problems.push_back("duplicate symbol " + std::to_string(s) + " in row " +
                                          std::to_string(r) + " at columns " +
                                          std::to_string(first_at[s]) + " and " + std::to_string(c));
            else
                first_at[s] = c;
        }
    }
    for (int c = 0; c < n; ++c) {
        std::fill(first_at.begin(), first_at.end(), -1);
        for (int r = 0; r < n; ++r) {
            const Symbol s = certificate.at(r, c);
            if (s == 0) continue;
            if (first_at[s] >= 0)
                report.problems.push_back("duplicate symbol " + std::to_string(s) + " in column " +
                                          std::to_string(c) + " at rows " +
                                          std::to_string(first_at[s]) + " and " + std::to_string(r));
            else
                first_at[s] = r;
        }
    }

    report.legal = report.problems.empty();
    report.score = certificate.filled_count();
    return report;
}

}  // namespace plse

#endif  // PLSE_VERIFY_HPP

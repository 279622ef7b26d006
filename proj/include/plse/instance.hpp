#ifndef PLSE_INSTANCE_HPP
#define PLSE_INSTANCE_HPP

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "plse/rng.hpp"

namespace plse {

using Symbol = std::uint16_t;  // 0 = empty cell, 1..n = symbols

struct Cell {
    int row = 0;
    int col = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class GenerationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An n x n grid where each cell is empty (0) or holds a symbol in 1..n,
// with no symbol repeated in a row or column.
class PlsInstance {
public:
    PlsInstance() = default;

    explicit PlsInstance(int order)
        : order_(order), cells_(static_cast<std::size_t>(order) * order, 0) {
        if (order <= 0) throw std::invalid_argument("order must be positive");
    }

    int order() const { return order_; }

    Symbol at(int row, int col) const { return cells_[index(row, col)]; }

    void set(int row, int col, Symbol value) {
        if (value > order_) throw std::invalid_argument("symbol out of range");
        cells_[index(row, col)] = value;
    }

    int filled_count() const {
        int count = 0;
        for (Symbol s : cells_) count += (s != 0);
        return count;
    }

    double fill_ratio() const {
        return static_cast<double>(filled_count()) / (static_cast<double>(order_) * order_);
    }

    const std::vector<Symbol>& cells() const { return cells_; }

    friend bool operator==(const PlsInstance&, const PlsInstance&) = default;

private:
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row) * order_ + col;
    }

    int order_ = 0;
    std::vector<Symbol> cells_;
};

// Checks the partial Latin square condition by row/column scan.
inline bool satisfies_latin_condition(const PlsInstance& instance) {
    const int n = instance.order();
    std::vector<char> seen(static_cast<std::size_t>(n) + 1);
    for (int r = 0; r < n; ++r) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int c = 0; c < n; ++c) {
            const Symbol s = instance.at(r, c);
            if (s == 0) continue;
            if (seen[s]) return false;
            seen[s] = 1;
        }
    }
    for (int c = 0; c < n; ++c) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int r = 0; r < n; ++r) {
            const Symbol s = instance.at(r, c);
            if (s == 0) continue;
            if (seen[s]) return false;
            seen[s] = 1;
        }
    }
    return true;
}

// File format: first line n, then n lines of n space-separated integers,
// 0 marking an empty cell.
inline PlsInstance parse_instance(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;

    auto next_line = [&](const char* expected) {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return;
        }
        ++line_no;
        throw ParseError(line_no, std::string("unexpected end of input, expected ") + expected);
    };

    next_line("grid order");
    long n = 0;
    {
        std::istringstream ls(line);
        if (!(ls >> n) || n <= 0) throw ParseError(line_no, "malformed header: expected positive grid order");
        std::string extra;
        if (ls >> extra) throw ParseError(line_no, "malformed header: trailing tokens");
    }
    if (n > 0xFFFF) throw ParseError(line_no, "grid order too large");

    PlsInstance instance(static_cast<int>(n));
    for (int r = 0; r < n; ++r) {
        next_line("grid row");
        std::istringstream ls(line);
        for (int c = 0; c < n; ++c) {
            long value = 0;
            if (!(ls >> value)) throw ParseError(line_no, "malformed row: expected " + std::to_string(n) + " entries");
            if (value < 0 || value > n)
                throw ParseError(line_no, "symbol out of range: " + std::to_string(value));
            instance.set(r, c, static_cast<Symbol>(value));
        }
        std::string extra;
        if (ls >> extra) throw ParseError(line_no, "malformed row: trailing tokens");
    }

    // Report Latin-condition violations with the offending position.
    const int order = instance.order();
    std::vector<int> first_at(static_cast<std::size_t>(order) + 1);
    for (int r = 0; r < order; ++r) {
        std::fill(first_at.begin(), first_at.end(), -1);
        for (int c = 0; c < order; ++c) {
            const Symbol s = instance.at(r, c);
            if (s == 0) continue;
            if (first_at[s] >= 0)
                throw ParseError(2 + r, "duplicate symbol " + std::to_string(s) + " in row " + std::to_string(r));
            first_at[s] = c;
        }
    }
    for (int c = 0; c < order; ++c) {
        std::fill(first_at.begin(), first_at.end(), -1);
        for (int r = 0; r < order; ++r) {
            const Symbol s = instance.at(r, c);
            if (s == 0) continue;
            if (first_at[s] >= 0)
                throw ParseError(2 + r, "duplicate symbol " + std::to_string(s) + " in column " + std::to_string(c));
            first_at[s] = r;
        }
    }
    return instance;
}

inline std::string serialize_instance(const PlsInstance& instance) {
    std::ostringstream out;
    const int n = instance.order();
    out << n << '\n';
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (c) out << ' ';
            out << instance.at(r, c);
        }
        out << '\n';
    }
    return out.str();
}

inline PlsInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
}

inline void save_instance(const PlsInstance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << serialize_instance(instance);
}

// Random instance at fill ratio r: repeatedly pick a uniformly random empty
// cell and a uniformly random admissible symbol until floor(r*n^2) cells are
// assigned. A cell with no admissible symbol is resampled; 50*n^2 consecutive
// failed draws trigger a restart with a fresh RNG stream, at most 100 restarts.
inline PlsInstance generate_instance(int n, double r, std::uint64_t seed) {
    if (n <= 0) throw std::invalid_argument("order must be positive");
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("fill ratio must be in (0,1)");

    const int total = n * n;
    const int target = static_cast<int>(r * total);
    const int max_failures = 50 * total;
    constexpr int kMaxRestarts = 100;

    for (int restart = 0; restart < kMaxRestarts; ++restart) {
        Rng rng = derive_stream(seed, stream_tag::kInstanceGen, static_cast<std::uint64_t>(restart));
        PlsInstance instance(n);
        // used[row | n+col] bit s set when symbol s is present in that line.
        const int words = (n + 64) / 64;
        std::vector<std::uint64_t> used(static_cast<std::size_t>(2) * n * words, 0);
        auto used_word = [&](bool is_col, int idx, int sym) -> std::uint64_t& {
            return used[(static_cast<std::size_t>(is_col ? n + idx : idx)) * words + sym / 64];
        };
        auto is_used = [&](bool is_col, int idx, int sym) {
            return (used_word(is_col, idx, sym) >> (sym % 64)) & 1;
        };

        std::vector<int> empty_cells(total);
        for (int i = 0; i < total; ++i) empty_cells[i] = i;
        int empty_count = total;

        std::vector<Symbol> admissible;
        admissible.reserve(n);
        int filled = 0;
        int failures = 0;

        while (filled < target && failures < max_failures) {
            const int pick = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(empty_count)));
            const int cell = empty_cells[pick];
            const int row = cell / n;
            const int col = cell % n;

            admissible.clear();
            for (int s = 1; s <= n; ++s) {
                if (!is_used(false, row, s) && !is_used(true, col, s))
                    admissible.push_back(static_cast<Symbol>(s));
            }
            if (admissible.empty()) {
                ++failures;
                continue;
            }
            const Symbol sym = admissible[rng.next_index(static_cast<std::uint32_t>(admissible.size()))];
            instance.set(row, col, sym);
            used_word(false, row, sym) |= 1ULL << (sym % 64);
            used_word(true, col, sym) |= 1ULL << (sym % 64);
            empty_cells[pick] = empty_cells[--empty_count];
            ++filled;
            failures = 0;
        }
        if (filled == target) return instance;
    }
    throw GenerationError("instance generation failed: (n=" + std::to_string(n) +
                          ", r=" + std::to_string(r) + ") exhausted the retry budget");
}

}  // namespace plse

#endif  // PLSE_INSTANCE_HPP

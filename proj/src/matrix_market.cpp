#include "nichol/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "nichol/errors.hpp"

namespace nichol {

namespace {

struct Entry {
    index_t row;
    index_t col;
    double value;
};

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool next_line(std::istream& in, std::string& line, long& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    }
    return false;
}

bool is_blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (c == '%') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;  // blank
}

index_t parse_index(const char*& p, long lineno, const char* what) {
    char* end = nullptr;
    long long v = std::strtoll(p, &end, 10);
    if (end == p) throw ParseError(lineno, std::string("expected ") + what);
    p = end;
    return static_cast<index_t>(v);
}

double parse_value(const char*& p, long lineno) {
    char* end = nullptr;
    double v = std::strtod(p, &end);
    if (end == p) throw ParseError(lineno, "expected numeric value");
    p = end;
    return v;
}

void expect_line_end(const char* p, long lineno) {
    while (*p != '\0') {
        if (!std::isspace(static_cast<unsigned char>(*p)))
            throw ParseError(lineno, "trailing characters on line");
        ++p;
    }
}

// Counting sort into rows, per-row column sort, then duplicate summation.
CsrMatrix assemble(index_t n, const std::vector<Entry>& entries, bool symmetric) {
    CsrMatrix a;
    a.n = n;
    a.symmetric = symmetric;
    a.row_ptr.assign(static_cast<size_t>(n) + 1, 0);
    for (const Entry& e : entries) ++a.row_ptr[static_cast<size_t>(e.row) + 1];
    for (index_t i = 0; i < n; ++i)
        a.row_ptr[static_cast<size_t>(i) + 1] += a.row_ptr[static_cast<size_t>(i)];

    a.col_idx.resize(entries.size());
    a.values.resize(entries.size());
    std::vector<index_t> fill(a.row_ptr.begin(), a.row_ptr.end() - 1);
    for (const Entry& e : entries) {
        const index_t pos = fill[static_cast<size_t>(e.row)]++;
        a.col_idx[static_cast<size_t>(pos)] = e.col;
        a.values[static_cast<size_t>(pos)] = e.value;
    }

    std::vector<std::pair<index_t, double>> row;
    size_t out = 0;
    for (index_t i = 0; i < n; ++i) {
        row.clear();
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
            row.emplace_back(a.col_idx[static_cast<size_t>(k)], a.values[static_cast<size_t>(k)]);
        std::sort(row.begin(), row.end(),
                  [](const auto& l, const auto& r) { return l.first < r.first; });
        const size_t row_start = out;
        a.row_ptr[static_cast<size_t>(i)] = static_cast<index_t>(row_start);
        for (const auto& [col, val] : row) {
            if (out > row_start && a.col_idx[out - 1] == col) {
                a.values[out - 1] += val;  // duplicate coordinate: sum
            } else {
                a.col_idx[out] = col;
                a.values[out] = val;
                ++out;
            }
        }
    }
    a.row_ptr[static_cast<size_t>(n)] = static_cast<index_t>(out);
    a.col_idx.resize(out);
    a.values.resize(out);
    return a;
}

// 17 significant digits round-trip an IEEE double exactly.
std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

CsrMatrix parse_matrix_market(std::istream& in) {
    std::string line;
    long lineno = 0;

    if (!next_line(in, line, lineno)) throw ParseError(1, "empty input");

    // Banner: %%MatrixMarket matrix coordinate <field> <symmetry>
    {
        std::istringstream hs(line);
        std::string banner, object, format, field, symmetry;
        hs >> banner >> object >> format >> field >> symmetry;
        if (lowercase(banner) != "%%matrixmarket")
            throw ParseError(lineno, "missing %%MatrixMarket banner");
        if (lowercase(object) != "matrix")
            throw ParseError(lineno, "unsupported object '" + object + "'");
        if (lowercase(format) != "coordinate")
            throw ParseError(lineno, "unsupported format '" + format + "' (coordinate required)");
        std::string f = lowercase(field);
        if (f == "complex" || f == "pattern")
            throw ParseError(lineno, "unsupported field '" + field + "'");
        if (f != "real" && f != "integer")
            throw ParseError(lineno, "unrecognized field '" + field + "'");
        std::string s = lowercase(symmetry);
        if (s != "general" && s != "symmetric")
            throw ParseError(lineno, "unsupported symmetry '" + symmetry + "'");
    }
    const bool symmetric = lowercase(line).find("symmetric") != std::string::npos;

    // Size line (first non-comment line after the banner).
    index_t n = 0;
    index_t declared_nnz = 0;
    for (;;) {
        if (!next_line(in, line, lineno)) throw ParseError(lineno + 1, "missing size line");
        if (is_blank_or_comment(line)) continue;
        const char* p = line.c_str();
        index_t rows = parse_index(p, lineno, "row count");
        index_t cols = parse_index(p, lineno, "column count");
        declared_nnz = parse_index(p, lineno, "entry count");
        expect_line_end(p, lineno);
        if (rows != cols)
            throw ParseError(lineno, "matrix is not square (" + std::to_string(rows) + "x" +
                                         std::to_string(cols) + ")");
        if (rows < 0 || declared_nnz < 0) throw ParseError(lineno, "negative size");
        n = rows;
        break;
    }

    std::vector<Entry> entries;
    entries.reserve(static_cast<size_t>(symmetric ? 2 * declared_nnz : declared_nnz));
    index_t seen = 0;
    while (seen < declared_nnz) {
        if (!next_line(in, line, lineno))
            throw ParseError(lineno + 1, "expected " + std::to_string(declared_nnz) +
                                             " entries, got " + std::to_string(seen));
        if (is_blank_or_comment(line)) continue;
        const char* p = line.c_str();
        index_t i = parse_index(p, lineno, "row index");
        index_t j = parse_index(p, lineno, "column index");
        double v = parse_value(p, lineno);
        expect_line_end(p, lineno);
        if (i < 1 || i > n || j < 1 || j > n)
            throw ParseError(lineno, "index (" + std::to_string(i) + ", " + std::to_string(j) +
                                         ") out of range for n = " + std::to_string(n));
        --i;
        --j;
        if (symmetric && j > i)
            throw ParseError(lineno, "upper-triangle entry in symmetric storage");
        entries.push_back({i, j, v});
        if (symmetric && i != j) entries.push_back({j, i, v});
        ++seen;
    }
    // Anything left over besides comments is an error.
    while (next_line(in, line, lineno)) {
        if (!is_blank_or_comment(line))
            throw ParseError(lineno, "unexpected data after " + std::to_string(declared_nnz) +
                                         " entries");
    }

    return assemble(n, entries, symmetric);
}

CsrMatrix parse_matrix_market(const std::string& text) {
    std::istringstream in(text);
    return parse_matrix_market(in);
}

CsrMatrix read_matrix_market_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open matrix file: " + path.string());
    return parse_matrix_market(in);
}

void write_matrix_market(const CsrMatrix& a, std::ostream& out) {
    const bool lower_only = a.symmetric;
    index_t count = 0;
    if (lower_only) {
        for (index_t i = 0; i < a.n; ++i)
            for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k)
                if (a.col_idx[k] <= i) ++count;
    } else {
        count = a.nnz();
    }

    out << "%%MatrixMarket matrix coordinate real "
        << (lower_only ? "symmetric" : "general") << "\n";
    out << a.n << " " << a.n << " " << count << "\n";
    for (index_t i = 0; i < a.n; ++i) {
        for (index_t k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
            if (lower_only && a.col_idx[k] > i) continue;
            out << (i + 1) << " " << (a.col_idx[k] + 1) << " " << fmt_double(a.values[k])
                << "\n";
        }
    }
}

void write_matrix_market_file(const CsrMatrix& a, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path.string());
    write_matrix_market(a, out);
}

void write_matrix_market(const LowerFactor& l, std::ostream& out) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << l.n() << " " << l.n() << " " << l.nnz() << "\n";
    for (index_t i = 0; i < l.n(); ++i) {
        for (index_t k = l.pattern.row_ptr[i]; k < l.pattern.row_ptr[i + 1]; ++k) {
            out << (i + 1) << " " << (l.pattern.col_idx[k] + 1) << " "
                << fmt_double(l.values[k]) << "\n";
        }
    }
}

void write_matrix_market_file(const LowerFactor& l, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path.string());
    write_matrix_market(l, out);
}

}  // namespace nichol

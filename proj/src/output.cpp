#include "er/output.hpp"

#include <cstdio>
#include <fstream>

#include "er/errors.hpp"

namespace er::out {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const Table& table, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file: " + path);
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        if (c) f << ',';
        f << table.header[c];
    }
    f << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) f << ',';
            if (row[c]) f << *row[c];
        }
        f << '\n';
    }
}

void write_json_rows(const Table& table, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file: " + path);
    f << "[\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        f << "  {";
        for (std::size_t c = 0; c < table.header.size(); ++c) {
            if (c) f << ", ";
            f << '"' << table.header[c] << "\": ";
            const auto& cell = table.rows[r][c];
            if (!cell) {
                f << "null";
            } else {
                // Quote cells that are not plain numbers.
                const std::string& s = *cell;
                const bool numeric =
                    s.find_first_not_of("0123456789+-.eE") == std::string::npos &&
                    !s.empty();
                if (numeric) f << s;
                else f << '"' << s << '"';
            }
        }
        f << (r + 1 < table.rows.size() ? "},\n" : "}\n");
    }
    f << "]\n";
}

void write_table(const Table& table, const std::string& path_base,
                 const std::string& format, std::vector<std::string>& outputs) {
    if (format == "json") {
        write_json_rows(table, path_base + ".json");
        outputs.push_back(path_base + ".json");
    } else {
        write_csv(table, path_base + ".csv");
        outputs.push_back(path_base + ".csv");
    }
}

Table grid_table(const field::GridField& g) {
    Table t;
    t.header = {"x", "y", "re_psi", "im_psi", "abs_psi", "chi", "Qx", "Qy", "region"};
    const field::QField q = field::gauge_invariant_Q(g);
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
            const std::size_t id = g.index(i, j);
            std::vector<Table::Cell> row;
            row.push_back(Table::num(g.x(i)));
            row.push_back(Table::num(g.y(j)));
            const auto z = g.psi[id];
            const bool have_psi = g.region[id] >= 0 || std::abs(z) > 0.0;
            if (have_psi) {
                row.push_back(Table::num(z.real()));
                row.push_back(Table::num(z.imag()));
                row.push_back(Table::num(std::abs(z)));
                row.push_back(Table::num(std::arg(z)));
            } else {
                for (int k = 0; k < 4; ++k) row.push_back(Table::none());
            }
            if (q.valid[id]) {
                row.push_back(Table::num(q.qx[id]));
                row.push_back(Table::num(q.qy[id]));
            } else {
                row.push_back(Table::none());
                row.push_back(Table::none());
            }
            if (g.region[id] >= 0)
                row.push_back(Table::num(g.region[id]));
            else
                row.push_back(Table::none());
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

Table effpot_table(
    const std::vector<const effpot::EffectivePotentialProfile*>& profiles) {
    Table t;
    t.header = {"x", "U", "variant", "masked"};
    for (const auto* p : profiles) {
        for (std::size_t i = 0; i < p->x.size(); ++i) {
            std::vector<Table::Cell> row;
            row.push_back(Table::num(p->x[i]));
            if (p->masked[i]) row.push_back(Table::none());
            else row.push_back(Table::num(p->value[i]));
            row.push_back(Table::text(p->provenance));
            row.push_back(Table::num(p->masked[i] ? 1.0 : 0.0));
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

} // namespace er::out

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "er/effpot.hpp"
#include "er/field.hpp"

namespace er::out {

// 17 significant digits, locale-independent; the regression baseline format.
std::string format_number(double v);

// Tabular data emitted as CSV (one header row, '\n' endings) or as a JSON
// array of row objects. Cells are pre-formatted; missing cells render as
// empty CSV fields / JSON nulls.
struct Table {
    using Cell = std::optional<std::string>;
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    static Cell num(double v) { return format_number(v); }
    static Cell text(std::string s) { return Cell(std::move(s)); }
    static Cell none() { return std::nullopt; }
};

void write_csv(const Table& table, const std::string& path);
void write_json_rows(const Table& table, const std::string& path);
// Writes path_base + ".csv" or ".json" per format; records the file written.
void write_table(const Table& table, const std::string& path_base,
                 const std::string& format, std::vector<std::string>& outputs);

// Grid CSV schema shared by `field` and `oracle`:
// x,y,re_psi,im_psi,abs_psi,chi,Qx,Qy,region with masked nodes as empty
// fields; row-major, y fastest.
Table grid_table(const field::GridField& grid);

// x,U,variant,masked rows, one block per profile.
Table effpot_table(
    const std::vector<const effpot::EffectivePotentialProfile*>& profiles);

} // namespace er::out

#pragma once

#include <array>
#include <string>
#include <vector>

#include "csflow/metrics.hpp"

namespace csflow {

// One refinement level of a convergence study. Error/eoc slots are indexed
// by error number minus one; unused slots hold NaN. The first row of a
// study has no eoc entries.
struct EocRow {
    int element_count = 0;
    long step_count = 0;
    std::array<double, 5> error{};
    std::array<double, 5> order{};
    bool failed = false;
    std::string message;
};

struct EocTable {
    ExampleId example;
    double alpha = 1.0;
    SchemeKind scheme = SchemeKind::Newton;
    std::string dt_rule;
    std::vector<int> error_indices; // which of E1..E5 the table reports
    std::vector<EocRow> rows;
};

// Runs one simulation per level and accumulates errors against the exact
// solution of the example. eoc columns use the mesh-width log ratio, except
// E3 whose violation scales with the time step, so its eoc uses the time
// step log ratio. Per-level failures are recorded in the row, not thrown.
EocTable convergence_study(ExampleId example, double alpha, SchemeKind scheme,
                           const std::vector<int>& levels, const DtRule& rule);

std::string eoc_csv(const EocTable& table);
std::string eoc_markdown(const EocTable& table);

// Reference convergence tables for the built-in benchmark problems:
//   t1l/t1r : shrinking semicircle, Newton scheme, alpha = 1 / 0.5
//   t2l/t2r : rotating diameter, Newton scheme, alpha = 1 / 0.5
//   t3      : rotating diameter, linear scheme, alpha = 1
//   t4      : coupled parabola on the diameter, Newton scheme, alpha = 0.5
enum class ReferenceTableId { T1L, T1R, T2L, T2R, T3, T4 };

ReferenceTableId parse_table_id(const std::string& name);
std::string table_name(ReferenceTableId id);

struct ReferenceTable {
    ReferenceTableId id;
    ExampleId example;
    double alpha;
    SchemeKind scheme;
    std::vector<int> error_indices;
    std::vector<EocRow> rows;   // reference values
    double value_tol;           // relative tolerance on error cells
    double eoc_tol;             // absolute tolerance on eoc cells
};

const ReferenceTable& reference_table(ReferenceTableId id);

struct CompareCell {
    int element_count = 0;
    std::string quantity; // "E1", "eoc1", ...
    double expected = 0.0;
    double computed = 0.0;
    double deviation = 0.0; // relative for errors, absolute for eocs
    bool pass = false;
};

struct CompareReport {
    ReferenceTableId table;
    double value_tol = 0.0;
    double eoc_tol = 0.0;
    std::vector<CompareCell> cells;
    bool pass = false;
};

// Runs the matching study and compares cell by cell. A negative tolerance
// keeps the table default.
CompareReport compare_against_reference(ReferenceTableId id, double value_tol = -1.0);

std::string compare_report_json(const CompareReport& report);

// full round-trip precision / fixed two decimals, used by all writers
std::string format_full(double v);
std::string format_eoc(double v);

} // namespace csflow

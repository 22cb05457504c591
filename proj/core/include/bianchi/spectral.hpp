#pragma once

#include "bianchi/complex.hpp"

#include <string>
#include <vector>

namespace bianchi {

// Orbit cell with its stabilizer table and word-tracked closure.
struct OrbitCellData {
    std::string name;
    StabilizerLabel label;
    GradedF2Space table;
    Closure cl;
};

// Degree-1 restriction data of one incidence slot, kept for reporting and
// for configuration overrides.
struct SlotInfo {
    int p = 0;                 // dimension of the target cell (1 = edge, 2 = face)
    std::string target_cell;   // edge or face orbit name
    int slot = 0;              // index among the cell's boundary slots
    std::string source_cell;   // vertex or edge orbit name
    std::vector<std::vector<bool>> h1;  // derived degree-1 images
};

struct RestrictionOverride {
    std::string target_cell;  // edge orbit name
    int slot = 0;
    std::vector<std::vector<bool>> h1;
};

// E1 page of the equivariant spectral sequence: E1^{p,q} = sum over orbit
// p-cells of H^q(stabilizer), with the first differential realized from the
// derived (or overridden) restriction maps.
class E1Page {
  public:
    GroupTag tag = GroupTag::Gamma0;
    int q_max = 9;
    std::vector<std::vector<OrbitCellData>> cells;  // [p], p = 0,1,2
    // slots[p][target cell index in dim p+1] = (source cell in dim p, map)
    std::vector<std::vector<std::vector<std::pair<int, GradedF2Map>>>> slots;
    std::vector<SlotInfo> slot_infos;

    int dim(int p, int q) const;
    std::vector<std::string> basis_names(int p, int q) const;
    F2Matrix d1(int p, int q) const;  // E1^{p,q} -> E1^{p+1,q}
    int cell_offset(int p, int q, int cell) const;
    int find_cell(int p, const std::string& name) const;
};

E1Page assemble_e1(const EquivariantComplex& cx, const QuotientStructure& qs, int q_max,
                   const std::vector<RestrictionOverride>& overrides = {});

// E2 entries as subquotients of E1, with chosen representative vectors.
struct E2Entry {
    int dim = 0;
    Subquotient sq;
    std::vector<std::string> rep_names;
};

class E2Page {
  public:
    int q_max = 9;
    std::vector<std::vector<E2Entry>> entries;  // [p][q]

    int dim(int p, int q) const;
    // sum over p + q = n of dim; requires n <= q_max
    int total_dim(int n) const;
};

E2Page compute_e2(const E1Page& e1);
int total_dims(const E2Page& e2, int n);

// Comparison of the two compatible spectral sequences along the natural
// inclusion (i) and the twisted injection (j): one slot per orbit cell of the
// congruence complex, giving the SL2 orbit cell its classes restrict from and
// the exact conjugator realizing the stabilizer map.
struct ComparisonSlot {
    std::string sl2_cell;
    Mat2 conjugator;
};

struct ComparisonConfig {
    // keyed [p][gamma0 orbit cell name] in page order
    std::vector<std::vector<std::vector<ComparisonSlot>>> i_slots, j_slots;
};

ComparisonConfig default_comparison_config(const E1Page& g0);

struct ComparisonCell {
    int kernel_dim = 0;
    int cokernel_dim = 0;
    std::vector<std::string> kernel_basis;
};

struct ComparisonResult {
    int q_max = 9;
    std::vector<std::vector<ComparisonCell>> cells;  // [p][q]
    const ComparisonCell& at(int p, int q) const { return cells[p][q]; }
};

// Builds the per-(p,q) matrices of (i*, j*), audits the chain-map property
// against both first differentials, and reduces to kernel and cokernel data
// on the E2 pages.
ComparisonResult compare_pages(const E1Page& sl2_e1, const E2Page& sl2_e2, const E1Page& g0_e1,
                               const E2Page& g0_e2, const ComparisonConfig& config);

}  // namespace bianchi

#pragma once

#include "bianchi/f2.hpp"
#include "bianchi/hspace.hpp"
#include "bianchi/tables.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bianchi {

// Cell stabilizer description: the kind fixes the cohomology table, the
// generators are audited against the cell geometry and against the closure
// order the kind demands (2, 4, 6, 8, 24).
struct StabilizerLabel {
    StabKind kind = StabKind::Trivial;
    std::string name;                     // display, e.g. "<C,B>"
    std::vector<std::string> gen_names;   // e.g. {"C","B"}
    std::vector<Mat2> gens;

    int expected_order() const;
};

StabilizerLabel center_label();
StabilizerLabel trivial_label();

struct VertexCell {
    std::string name;
    HPoint point;
    StabilizerLabel label;
};

struct EdgeCell {
    std::string name;
    int v0 = -1, v1 = -1;
    StabilizerLabel label;
};

struct FaceCell {
    std::string name;
    // closed walk, (edge index, +1/-1); slot k runs from its start vertex to
    // its end vertex and consecutive slots chain
    std::vector<std::pair<int, int>> boundary;
    StabilizerLabel label;
};

// g . source = target, cell-wise.
struct Identification {
    int dim = 1;
    int source = -1, target = -1;
    Mat2 g;
};

enum class GroupTag { Gamma0, SL2 };

struct EquivariantComplex {
    GroupTag tag = GroupTag::Gamma0;
    bool geometric = true;
    std::vector<VertexCell> vertices;
    std::vector<EdgeCell> edges;
    std::vector<FaceCell> faces;
    std::vector<Identification> idents;
};

// The two fixture complexes. Construction runs the full audit set
// (generator orders, subgroup recognition, fixed points, identification
// geometry) and throws on any inconsistency.
EquivariantComplex build_gamma0_complex();
EquivariantComplex build_sl2_complex();

// Orbit decomposition with exact transports (cell = transport * rep cell).
struct QuotientStructure {
    // orbit id per fundamental cell
    std::vector<int> vorbit, eorbit, forbit;
    // fundamental index of each orbit's representative
    std::vector<int> vrep, erep, frep;
    // transports: cell = transport * rep
    std::vector<Mat2> vtransport, etransport, ftransport;
    // +1 if the edge transport maps (rep.v0, rep.v1) to (v0, v1) in order
    std::vector<int> eorientation;

    IntMatrix d1;  // vertex-orbits x edge-orbits, integral incidence
    IntMatrix d2;  // edge-orbits x face-orbits

    int vertex_orbits() const { return static_cast<int>(vrep.size()); }
    int edge_orbits() const { return static_cast<int>(erep.size()); }
    int face_orbits() const { return static_cast<int>(frep.size()); }
};

QuotientStructure build_quotient(const EquivariantComplex& cx);

// Orbit cell complex with induced incidence; also constructible directly for
// synthetic test inputs.
struct QuotientComplex {
    IntMatrix d1;  // vertices x edges
    IntMatrix d2;  // edges x faces

    int vertices() const { return d1.rows; }
    int edges() const { return d1.cols; }
    int faces() const { return d2.cols; }

    F2Matrix d1_f2() const;
    F2Matrix d2_f2() const;
    int euler_characteristic() const { return vertices() - edges() + faces(); }
};

QuotientComplex quotient(const EquivariantComplex& cx);
QuotientComplex quotient_of(const QuotientStructure& qs);

// F2 dimension of degree-p cellular cohomology of the quotient.
int cohomology_dims(const QuotientComplex& q, int p);
std::vector<int> betti_numbers(const QuotientComplex& q);  // degrees 0,1,2

// Sub-complex of cells whose stabilizers contain non-central elements of
// 2-power order (kinds Z4, Q8, Te24). Orbit identifications of the ambient
// complex are carried over explicitly so the quotient of the subcomplex
// equals the subcomplex of the quotient.
EquivariantComplex torsion_subcomplex(const EquivariantComplex& cx);

// Rank of the cokernel of H^1(quotient X) -> H^1(quotient X_s).
int corank(const EquivariantComplex& cx);
// Synthetic form: edge_inclusion[i] = index of sub-edge i among full edges.
int corank(const QuotientComplex& full, const QuotientComplex& sub,
           const std::vector<int>& edge_inclusion);

// Group presentation data; the complex-derived presentation is audited by
// mapping every relation to matrices and checking it collapses to I.
struct Presentation {
    std::vector<std::string> generators;
    // relation = list of (generator index, exponent +-1), left to right
    std::vector<std::vector<std::pair<int, int>>> relations;
};

struct AbelianizationResult {
    std::vector<Int> divisors;   // elementary divisors > 1
    int free_rank = 0;
    int f2_corank() const;       // #even divisors + free rank
    std::string to_string() const;  // e.g. "(2, 2, inf, inf)"
};

AbelianizationResult abelianize(const Presentation& p);
Presentation presentation_from_complex(const EquivariantComplex& cx);
AbelianizationResult abelianization(const EquivariantComplex& cx);

// Structured text form of the complex (cells, labels, identifications) for
// diffing against alternate implementations.
std::string serialize(const EquivariantComplex& cx);

}  // namespace bianchi

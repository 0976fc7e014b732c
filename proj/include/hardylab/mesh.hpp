#pragma once

#include <array>
#include <utility>
#include <iosfwd>
#include <vector>

#include <Eigen/Sparse>

#include "hardylab/domains.hpp"
#include "hardylab/fields.hpp"
#include "hardylab/vec2.hpp"

namespace hardylab {

enum class SolverPath { automatic, radial, planar };

std::string path_name(SolverPath path);
SolverPath path_from_name(const std::string& name);

struct MeshOptions {
    double q = 0.5;
    // Cells between t = r and the smallest graded node at level 0; 0 picks the path default.
    int base_cells = 0;
    // true: the graded range grows with the level (cells x4, log-step /2).
    // false: fixed range, cells x2 per level. Unset picks the domain default.
    int grow_range = -1;
    int columns = 32;  // rays for ball, punctured plane and disk complement
    SolverPath path = SolverPath::automatic;
};

// Resolved path for a domain: radial (1D) or planar (2D).
SolverPath resolve_path(const DomainSpec& domain, SolverPath requested);

// Graded boundary-layer mesh. Node i sits at anchor[i] + t[i] * dir[i] in the planar case,
// and at distance t[i] along a representative ray in the 1D case.
struct LayerMesh {
    int dim = 1;
    int level = 0;
    double q = 0.5;
    double r = 0.0;
    double h_level = 1.0;  // refinement parameter used for extrapolation

    std::vector<double> t;
    std::vector<Vec2> anchor, dir;
    std::vector<std::array<int, 3>> cells;  // 1D cells use the first two entries
    std::vector<char> dirichlet;

    // 1D measure mu(t) = measure_scale * (ray_origin + ray_sign * t)^measure_power,
    // and field evaluation at x = (ray_origin + ray_sign * t) e_1 in R^ambient_dim.
    double measure_scale = 1.0;
    double ray_origin = 0.0;
    double ray_sign = 1.0;
    int measure_power = 0;
    int ambient_dim = 1;

    std::size_t num_nodes() const { return t.size(); }
    std::size_t num_cells() const { return cells.size(); }
    int cell_size() const { return dim == 1 ? 2 : 3; }
    Vec2 position(std::size_t i) const { return anchor[i] + t[i] * dir[i]; }
    // Exact difference position(b) - position(a), accurate for nodes on a shared ray.
    Vec2 edge(std::size_t a, std::size_t b) const {
        return (anchor[b] - anchor[a]) + (t[b] * dir[b] - t[a] * dir[a]);
    }
    // Same difference kept as anchor part plus offset part, so offsets far below the
    // anchor spacing survive in products.
    std::pair<Vec2, Vec2> split_edge(std::size_t a, std::size_t b) const {
        return {anchor[b] - anchor[a], t[b] * dir[b] - t[a] * dir[a]};
    }
    // Ambient coordinates of a point with 1D coordinate s, or planar position p.
    std::vector<double> ambient_1d(double s) const;
    std::size_t num_dofs() const;
};

// Graded nodes r q^(j / 2^level) for the chosen ladder, ascending, without 0.
std::vector<double> graded_nodes(double r, int level, double q, int base_cells, bool grow_range);

LayerMesh build_layer_mesh(const DomainSpec& domain, double r, int level, const MeshOptions& options = {});

// Drops cells whose centroid distance is at most inner_radius; nodes touching a dropped cell become Dirichlet.
LayerMesh restrict_support(const LayerMesh& mesh, double inner_radius);

enum class ProfileUse { none, stiffness, both };

struct FormPair {
    Eigen::SparseMatrix<double> K, M;
    std::vector<int> dof_node;  // node index of each dof
    std::vector<int> node_dof;  // dof index of each node, -1 on Dirichlet nodes
};

// Generic weighted pair: K = int d^k_exp grad.grad, M = int d^m_exp phi phi, centroid weights.
FormPair assemble_weighted(const LayerMesh& mesh, double k_exp, double m_exp, const CoefficientField* field = nullptr,
                           ProfileUse profile = ProfileUse::none);

// Hardy pair for the field's delta. use_profile multiplies K by c (I + E).
FormPair assemble(const LayerMesh& mesh, const CoefficientField& field, bool use_profile = false);

// Plain-text listing of nodes and cells for debugging.
void dump_mesh(const LayerMesh& mesh, std::ostream& out);

}  // namespace hardylab

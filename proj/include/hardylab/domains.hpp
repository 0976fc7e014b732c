#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hardylab/vec2.hpp"

namespace hardylab {

enum class DomainKind { half_line, interval, ball, punctured_space, convex_complement, decorated_ball };
enum class ConvexShape { ball_subspace, slab };

using Point = std::vector<double>;

// Parametric catalog domain. Only the fields relevant to `kind` are read.
struct DomainSpec {
    DomainKind kind = DomainKind::half_line;
    int dim = 1;
    double hausdorff_dim = 0.0;

    double length = 1.0;  // interval (0, length)
    double radius = 1.0;  // ball radius R, or convex_complement radius / slab half-width a

    ConvexShape shape = ConvexShape::ball_subspace;
    int subspace_dim = 0;  // s for ball_subspace

    // decorated ball: attached disk k has radius first_radius * 2^-k
    double base_radius = 1.0;
    double first_radius = 0.25;
    int attachments = 3;
    double aspect = 0.1;  // tunnel width / attached radius

    static DomainSpec half_line();
    static DomainSpec interval(double length);
    static DomainSpec ball(int dim, double radius);
    static DomainSpec punctured_space(int dim);
    static DomainSpec ball_subspace_complement(int dim, int s, double radius);
    static DomainSpec slab_complement(int dim, double half_width);
    static DomainSpec decorated_ball(double aspect, int attachments = 3);
};

std::string kind_name(DomainKind kind);
DomainKind kind_from_name(const std::string& name);

// d_H from the geometry. Throws GeometryError on invalid parameters.
double canonical_hausdorff_dim(const DomainSpec& spec);
void validate(const DomainSpec& spec);

DomainSpec domain_from_json(const nlohmann::json& doc);
nlohmann::json domain_to_json(const DomainSpec& spec);

// Largest r for which the layer is a proper subset; infinity for unbounded domains.
double inradius(const DomainSpec& spec);

// Euclidean distance to the boundary; throws DomainMembershipError outside the open domain.
double distance_to_boundary(const DomainSpec& spec, std::span<const double> x);
double distance_to_boundary(const DomainSpec& spec, Vec2 x);

// Same as distance_to_boundary but returns -1 outside the open domain instead of throwing.
double distance_or_negative(const DomainSpec& spec, std::span<const double> x);
double distance_or_negative(const DomainSpec& spec, Vec2 x);

// Gradient of d_Gamma at x. Closed form for catalog domains, central differences for the decorated ball.
// Throws GeometryError on the singular set where d_Gamma is not differentiable.
std::vector<double> distance_gradient(const DomainSpec& spec, std::span<const double> x);

bool in_layer(const DomainSpec& spec, double r, std::span<const double> x);

// Concrete lollipop geometry. Local frame per tunnel: axial e, lateral p.
struct Tunnel {
    double theta = 0.0;
    Vec2 e, p;
    double rho = 0.0;       // attached disk radius
    double h = 0.0;         // tunnel half-width
    double a0 = 0.0;        // axial coordinate where walls meet the base circle
    double a1 = 0.0;        // axial coordinate where walls meet the attached circle
    double center = 0.0;    // axial coordinate of the attached disk center
    double mouth_base = 0.0;   // half-angle of the mouth seen from the origin
    double mouth_small = 0.0;  // half-angle of the mouth seen from the attached center
    Vec2 local(double axial, double lateral) const { return axial * e + lateral * p; }
    Vec2 small_center() const { return center * e; }
};

struct DecoratedGeometry {
    double base_radius = 1.0;
    std::vector<Tunnel> tunnels;
};

DecoratedGeometry decorated_geometry(const DomainSpec& spec);

// Boundary pieces of planar domains as arcs, segments and isolated points.
struct Arc {
    Vec2 center;
    double radius = 0.0;
    double phi0 = 0.0;  // counterclockwise from phi0 to phi1, phi1 > phi0
    double phi1 = 0.0;
};

struct Segment {
    Vec2 a, b;
};

struct BoundaryPieces {
    std::vector<Arc> arcs;
    std::vector<Segment> segments;
    std::vector<Vec2> points;
    bool empty() const { return arcs.empty() && segments.empty() && points.empty(); }
};

double distance_to_pieces(const BoundaryPieces& pieces, Vec2 x);

// Boundary pieces of a planar (dim 2) domain clipped to the closed ball B(center; radius).
BoundaryPieces clipped_boundary(const DomainSpec& spec, Vec2 center, double radius);

// Low-discrepancy probe points in the layer {x : d_Gamma(x) < r}.
std::vector<Point> layer_probes(const DomainSpec& spec, double r, int count);

double halton(std::uint64_t index, int base);

struct VolumeScan {
    std::vector<double> r_values;
    std::vector<double> volumes;
    double slope = 0.0;
};

// Monte-Carlo estimate of |{x in domain : d_A(x) < r}| with A = boundary within B(center; radius).
VolumeScan volume_scan(const DomainSpec& spec, const Point& anchor_center, double anchor_radius,
                       const std::vector<double>& r_values, int samples, std::uint64_t seed);

struct HessianReport {
    double max_violation = 0.0;
    bool pass = false;
    int evaluated = 0;
    int skipped = 0;
};

// Checks |d Laplacian(d) - (beta-1)| <= gamma d on layer probes by central differences with h = d/10.
HessianReport hessian_condition_check(const DomainSpec& spec, double r, double beta, double gamma, int probes,
                                      double tolerance = 1e-3);

struct CatalogInfo {
    int dim = 1;
    double hausdorff_dim = 0.0;
    bool standard_hardy_formula_applicable = false;
    std::optional<std::pair<double, double>> beta_gamma;
};

// r0 is the layer bound entering gamma for curved boundaries.
CatalogInfo catalog_info(const DomainSpec& spec, double r0 = 0.5);

}  // namespace hardylab

#include "hardylab/domains.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "hardylab/errors.hpp"
#include "hardylab/rng.hpp"

namespace hardylab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double norm_span(std::span<const double> x, std::size_t from = 0, std::size_t to = SIZE_MAX) {
    double s = 0.0;
    for (std::size_t i = from; i < std::min(to, x.size()); ++i) s += x[i] * x[i];
    return std::sqrt(s);
}

void require_dim(const DomainSpec& spec, std::span<const double> x) {
    if (static_cast<int>(x.size()) != spec.dim)
        throw ArgumentError("point has " + std::to_string(x.size()) + " coordinates, domain dimension is " +
                            std::to_string(spec.dim));
}

double segment_distance(const Segment& s, Vec2 x) {
    const Vec2 ab = s.b - s.a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(x - s.a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return norm(x - (s.a + t * ab));
}

// Angle of phi lifted into [phi0, phi0 + 2pi).
double lift_angle(double phi, double phi0) {
    double v = std::fmod(phi - phi0, 2.0 * kPi);
    if (v < 0.0) v += 2.0 * kPi;
    return phi0 + v;
}

double arc_distance(const Arc& a, Vec2 x) {
    const Vec2 v = x - a.center;
    const double rv = norm(v);
    if (rv == 0.0) return a.radius;
    if (a.phi1 - a.phi0 >= 2.0 * kPi) return std::abs(rv - a.radius);
    const double phi = lift_angle(std::atan2(v.y, v.x), a.phi0);
    if (phi <= a.phi1) return std::abs(rv - a.radius);
    const Vec2 e0 = a.center + a.radius * unit(a.phi0);
    const Vec2 e1 = a.center + a.radius * unit(a.phi1);
    return std::min(norm(x - e0), norm(x - e1));
}

BoundaryPieces decorated_pieces(const DecoratedGeometry& g) {
    BoundaryPieces out;
    const auto& ts = g.tunnels;
    const int m = static_cast<int>(ts.size());
    for (int k = 0; k < m; ++k) {
        const Tunnel& t = ts[k];
        const Tunnel& next = ts[(k + 1) % m];
        double end = next.theta - next.mouth_base;
        const double start = t.theta + t.mouth_base;
        if (end <= start) end += 2.0 * kPi;
        out.arcs.push_back({Vec2{}, g.base_radius, start, end});
        out.segments.push_back({t.local(t.a0, -t.h), t.local(t.a1, -t.h)});
        out.segments.push_back({t.local(t.a0, t.h), t.local(t.a1, t.h)});
        const double back = t.theta + kPi;
        out.arcs.push_back({t.small_center(), t.rho, back + t.mouth_small, back + 2.0 * kPi - t.mouth_small});
    }
    if (m == 0) out.arcs.push_back({Vec2{}, g.base_radius, 0.0, 2.0 * kPi});
    return out;
}

bool decorated_contains(const DecoratedGeometry& g, Vec2 x) {
    if (norm(x) < g.base_radius) return true;
    for (const Tunnel& t : g.tunnels) {
        const double ax = dot(x, t.e);
        const double lat = dot(x, t.p);
        if (ax > 0.0 && ax < t.center && std::abs(lat) < t.h) return true;
        if (norm(x - t.small_center()) < t.rho) return true;
    }
    return false;
}

// Arc pieces of the circle (center, radius) lying in the closed disk B(c; R0).
std::vector<Arc> clip_arc(const Arc& a, Vec2 c, double R0) {
    const Vec2 oc = c - a.center;
    const double D = norm(oc);
    double lo = 0.0, hi = 0.0;
    if (D == 0.0) {
        if (a.radius > R0) return {};
        return {a};
    }
    const double kappa = (a.radius * a.radius + D * D - R0 * R0) / (2.0 * a.radius * D);
    if (kappa > 1.0) return {};
    if (kappa <= -1.0) return {a};
    const double psi = std::atan2(oc.y, oc.x);
    const double w = std::acos(kappa);
    lo = psi - w;
    hi = psi + w;
    std::vector<Arc> out;
    for (int k = -2; k <= 2; ++k) {
        const double l = std::max(lo + 2.0 * kPi * k, a.phi0);
        const double h = std::min(hi + 2.0 * kPi * k, a.phi1);
        if (h > l) out.push_back({a.center, a.radius, l, h});
    }
    return out;
}

std::optional<Segment> clip_segment(const Segment& s, Vec2 c, double R0) {
    const Vec2 d = s.b - s.a;
    const Vec2 f = s.a - c;
    const double A = dot(d, d);
    const double B = 2.0 * dot(f, d);
    const double C = dot(f, f) - R0 * R0;
    const double disc = B * B - 4.0 * A * C;
    if (A == 0.0 || disc < 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);
    const double t0 = std::max(0.0, (-B - sq) / (2.0 * A));
    const double t1 = std::min(1.0, (-B + sq) / (2.0 * A));
    if (t1 <= t0) return std::nullopt;
    return Segment{s.a + t0 * d, s.a + t1 * d};
}

void add_clipped_arc(BoundaryPieces& out, const Arc& a, Vec2 c, double R0) {
    for (const Arc& piece : clip_arc(a, c, R0)) out.arcs.push_back(piece);
}

void add_clipped_segment(BoundaryPieces& out, const Segment& s, Vec2 c, double R0) {
    if (auto piece = clip_segment(s, c, R0)) out.segments.push_back(*piece);
}

struct Box {
    std::vector<double> lo, hi;
};

void include(Box& b, Vec2 p) {
    b.lo[0] = std::min(b.lo[0], p.x);
    b.hi[0] = std::max(b.hi[0], p.x);
    b.lo[1] = std::min(b.lo[1], p.y);
    b.hi[1] = std::max(b.hi[1], p.y);
}

Box pieces_box(const BoundaryPieces& pieces) {
    Box b{{kInf, kInf}, {-kInf, -kInf}};
    for (Vec2 p : pieces.points) include(b, p);
    for (const Segment& s : pieces.segments) {
        include(b, s.a);
        include(b, s.b);
    }
    for (const Arc& a : pieces.arcs) {
        include(b, a.center + a.radius * unit(a.phi0));
        include(b, a.center + a.radius * unit(a.phi1));
        for (int k = -8; k <= 8; ++k) {
            const double phi = k * kPi / 2.0;
            if (phi >= a.phi0 && phi <= a.phi1) include(b, a.center + a.radius * unit(phi));
        }
    }
    return b;
}

// Finite boundary of a one-dimensional domain.
std::vector<double> boundary_points_1d(const DomainSpec& spec) {
    switch (spec.kind) {
        case DomainKind::half_line:
        case DomainKind::punctured_space:
            return {0.0};
        case DomainKind::interval:
            return {0.0, spec.length};
        case DomainKind::ball:
            return {-spec.radius, spec.radius};
        case DomainKind::convex_complement:
            if (spec.shape == ConvexShape::ball_subspace && spec.subspace_dim == 0) return {0.0};
            return {-spec.radius, spec.radius};
        case DomainKind::decorated_ball:
            break;
    }
    throw GeometryError("no one-dimensional boundary for this domain");
}

}  // namespace

DomainSpec DomainSpec::half_line() {
    DomainSpec s;
    s.kind = DomainKind::half_line;
    s.dim = 1;
    s.hausdorff_dim = 0.0;
    return s;
}

DomainSpec DomainSpec::interval(double length) {
    DomainSpec s;
    s.kind = DomainKind::interval;
    s.dim = 1;
    s.length = length;
    s.hausdorff_dim = 0.0;
    return s;
}

DomainSpec DomainSpec::ball(int dim, double radius) {
    DomainSpec s;
    s.kind = DomainKind::ball;
    s.dim = dim;
    s.radius = radius;
    s.hausdorff_dim = dim - 1;
    return s;
}

DomainSpec DomainSpec::punctured_space(int dim) {
    DomainSpec s;
    s.kind = DomainKind::punctured_space;
    s.dim = dim;
    s.hausdorff_dim = 0.0;
    return s;
}

DomainSpec DomainSpec::ball_subspace_complement(int dim, int subspace, double radius) {
    DomainSpec s;
    s.kind = DomainKind::convex_complement;
    s.shape = ConvexShape::ball_subspace;
    s.dim = dim;
    s.subspace_dim = subspace;
    s.radius = radius;
    s.hausdorff_dim = canonical_hausdorff_dim(s);
    return s;
}

DomainSpec DomainSpec::slab_complement(int dim, double half_width) {
    DomainSpec s;
    s.kind = DomainKind::convex_complement;
    s.shape = ConvexShape::slab;
    s.dim = dim;
    s.subspace_dim = dim;
    s.radius = half_width;
    s.hausdorff_dim = dim - 1;
    return s;
}

DomainSpec DomainSpec::decorated_ball(double aspect, int attachments) {
    DomainSpec s;
    s.kind = DomainKind::decorated_ball;
    s.dim = 2;
    s.aspect = aspect;
    s.attachments = attachments;
    s.hausdorff_dim = 1.0;
    return s;
}

std::string kind_name(DomainKind kind) {
    switch (kind) {
        case DomainKind::half_line: return "half_line";
        case DomainKind::interval: return "interval";
        case DomainKind::ball: return "ball";
        case DomainKind::punctured_space: return "punctured_space";
        case DomainKind::convex_complement: return "convex_complement";
        case DomainKind::decorated_ball: return "decorated_ball";
    }
    return "unknown";
}

DomainKind kind_from_name(const std::string& name) {
    for (DomainKind k : {DomainKind::half_line, DomainKind::interval, DomainKind::ball, DomainKind::punctured_space,
                         DomainKind::convex_complement, DomainKind::decorated_ball})
        if (kind_name(k) == name) return k;
    throw ConfigError("unknown domain kind '" + name + "'");
}

double canonical_hausdorff_dim(const DomainSpec& spec) {
    switch (spec.kind) {
        case DomainKind::half_line:
        case DomainKind::interval:
        case DomainKind::punctured_space:
            return 0.0;
        case DomainKind::ball:
            return spec.dim - 1;
        case DomainKind::decorated_ball:
            return 1.0;
        case DomainKind::convex_complement:
            if (spec.shape == ConvexShape::slab) return spec.dim - 1;
            // A full-dimensional convex body has a boundary of dimension d-1.
            return spec.subspace_dim < spec.dim ? spec.subspace_dim : spec.dim - 1;
    }
    return 0.0;
}

void validate(const DomainSpec& spec) {
    if (spec.dim < 1) throw GeometryError("dimension must be at least 1");
    switch (spec.kind) {
        case DomainKind::half_line:
            if (spec.dim != 1) throw GeometryError("half_line requires dim 1");
            break;
        case DomainKind::interval:
            if (spec.dim != 1) throw GeometryError("interval requires dim 1");
            if (!(spec.length > 0.0)) throw GeometryError("interval length must be positive");
            break;
        case DomainKind::ball:
            if (!(spec.radius > 0.0)) throw GeometryError("ball radius must be positive");
            break;
        case DomainKind::punctured_space:
            break;
        case DomainKind::convex_complement:
            if (!(spec.radius > 0.0) && !(spec.shape == ConvexShape::ball_subspace && spec.subspace_dim == 0))
                throw GeometryError("convex_complement radius must be positive");
            if (spec.shape == ConvexShape::ball_subspace &&
                (spec.subspace_dim < 0 || spec.subspace_dim > spec.dim))
                throw GeometryError("subspace dimension must lie in [0, dim]");
            break;
        case DomainKind::decorated_ball: {
            if (spec.dim != 2) throw GeometryError("decorated_ball is planar only");
            if (!(spec.aspect > 0.0 && spec.aspect < 0.25)) throw GeometryError("tunnel aspect must lie in (0, 1/4)");
            if (!(spec.base_radius > 0.0) || !(spec.first_radius > 0.0))
                throw GeometryError("decorated_ball radii must be positive");
            if (spec.attachments < 0) throw GeometryError("attachment count must be nonnegative");
            const DecoratedGeometry g = decorated_geometry(spec);
            const int m = static_cast<int>(g.tunnels.size());
            for (int k = 0; m > 1 && k < m; ++k) {
                const Tunnel& a = g.tunnels[k];
                const Tunnel& b = g.tunnels[(k + 1) % m];
                if (norm(a.small_center() - b.small_center()) <= a.rho + b.rho)
                    throw GeometryError("attached disks overlap; reduce the attachment count");
            }
            break;
        }
    }
    const double dh = canonical_hausdorff_dim(spec);
    if (std::abs(dh - spec.hausdorff_dim) > 1e-12)
        throw GeometryError("hausdorff_dim " + std::to_string(spec.hausdorff_dim) + " does not match the geometry (" +
                            std::to_string(dh) + ")");
    if (!(spec.hausdorff_dim >= 0.0 && spec.hausdorff_dim < spec.dim))
        throw GeometryError("hausdorff_dim must lie in [0, dim)");
}

DomainSpec domain_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("domain document must be a JSON object");
    if (!doc.contains("kind") || !doc["kind"].is_string()) throw ConfigError("field 'kind': missing or not a string");
    DomainSpec s;
    s.kind = kind_from_name(doc["kind"].get<std::string>());
    auto number = [](const nlohmann::json& obj, const char* key, double fallback) {
        if (!obj.contains(key)) return fallback;
        if (!obj[key].is_number()) throw ConfigError(std::string("field '") + key + "': expected a number");
        return obj[key].get<double>();
    };
    auto integer = [](const nlohmann::json& obj, const char* key, int fallback) {
        if (!obj.contains(key)) return fallback;
        if (!obj[key].is_number_integer()) throw ConfigError(std::string("field '") + key + "': expected an integer");
        return obj[key].get<int>();
    };
    s.dim = integer(doc, "dim", s.kind == DomainKind::decorated_ball ? 2 : 1);
    const nlohmann::json params = doc.value("params", nlohmann::json::object());
    if (!params.is_object()) throw ConfigError("field 'params': expected an object");

    std::vector<std::string> allowed;
    switch (s.kind) {
        case DomainKind::half_line:
        case DomainKind::punctured_space:
            break;
        case DomainKind::interval:
            allowed = {"length"};
            s.length = number(params, "length", 1.0);
            break;
        case DomainKind::ball:
            allowed = {"radius"};
            s.radius = number(params, "radius", 1.0);
            break;
        case DomainKind::convex_complement: {
            allowed = {"shape", "subspace_dim", "radius"};
            const std::string shape = params.value("shape", std::string("ball_subspace"));
            if (shape == "ball_subspace") {
                s.shape = ConvexShape::ball_subspace;
                s.subspace_dim = integer(params, "subspace_dim", 0);
            } else if (shape == "slab") {
                s.shape = ConvexShape::slab;
                s.subspace_dim = s.dim;
            } else {
                throw ConfigError("field 'params.shape': expected 'ball_subspace' or 'slab'");
            }
            s.radius = number(params, "radius", 1.0);
            break;
        }
        case DomainKind::decorated_ball:
            allowed = {"base_radius", "first_radius", "attachments", "aspect", "ratio"};
            s.base_radius = number(params, "base_radius", 1.0);
            s.first_radius = number(params, "first_radius", 0.25);
            s.attachments = integer(params, "attachments", 3);
            s.aspect = number(params, "aspect", 0.1);
            if (std::abs(number(params, "ratio", 0.5) - 0.5) > 0.0)
                throw ConfigError("field 'params.ratio': only the ratio 0.5 is supported");
            break;
    }
    for (auto it = params.begin(); it != params.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            throw ConfigError("field 'params." + it.key() + "': not a parameter of " + kind_name(s.kind));

    s.hausdorff_dim = canonical_hausdorff_dim(s);
    if (doc.contains("hausdorff_dim")) {
        const double given = number(doc, "hausdorff_dim", s.hausdorff_dim);
        if (std::abs(given - s.hausdorff_dim) > 1e-12)
            throw ConfigError("field 'hausdorff_dim': " + std::to_string(given) + " contradicts the geometry value " +
                              std::to_string(s.hausdorff_dim));
    }
    try {
        validate(s);
    } catch (const GeometryError& e) {
        throw ConfigError(std::string("domain: ") + e.what());
    }
    return s;
}

nlohmann::json domain_to_json(const DomainSpec& s) {
    nlohmann::json params = nlohmann::json::object();
    switch (s.kind) {
        case DomainKind::half_line:
        case DomainKind::punctured_space:
            break;
        case DomainKind::interval:
            params["length"] = s.length;
            break;
        case DomainKind::ball:
            params["radius"] = s.radius;
            break;
        case DomainKind::convex_complement:
            params["shape"] = s.shape == ConvexShape::slab ? "slab" : "ball_subspace";
            if (s.shape == ConvexShape::ball_subspace) params["subspace_dim"] = s.subspace_dim;
            params["radius"] = s.radius;
            break;
        case DomainKind::decorated_ball:
            params["base_radius"] = s.base_radius;
            params["first_radius"] = s.first_radius;
            params["attachments"] = s.attachments;
            params["aspect"] = s.aspect;
            break;
    }
    return {{"kind", kind_name(s.kind)}, {"dim", s.dim}, {"params", params}, {"hausdorff_dim", s.hausdorff_dim}};
}

double inradius(const DomainSpec& spec) {
    switch (spec.kind) {
        case DomainKind::interval: return spec.length / 2.0;
        case DomainKind::ball: return spec.radius;
        case DomainKind::decorated_ball: return spec.base_radius;
        default: return kInf;
    }
}

DecoratedGeometry decorated_geometry(const DomainSpec& spec) {
    DecoratedGeometry g;
    g.base_radius = spec.base_radius;
    const int m = spec.attachments;
    for (int k = 0; k < m; ++k) {
        Tunnel t;
        t.theta = 2.0 * kPi * k / m;
        t.e = unit(t.theta);
        t.p = perp(t.e);
        t.rho = spec.first_radius * std::ldexp(1.0, -k);
        t.h = spec.aspect * t.rho / 2.0;
        t.a0 = std::sqrt(spec.base_radius * spec.base_radius - t.h * t.h);
        t.center = spec.base_radius + 2.0 * t.rho;
        t.a1 = t.center - std::sqrt(t.rho * t.rho - t.h * t.h);
        t.mouth_base = std::asin(t.h / spec.base_radius);
        t.mouth_small = std::asin(t.h / t.rho);
        g.tunnels.push_back(t);
    }
    return g;
}

double distance_to_pieces(const BoundaryPieces& pieces, Vec2 x) {
    double best = kInf;
    for (const Arc& a : pieces.arcs) best = std::min(best, arc_distance(a, x));
    for (const Segment& s : pieces.segments) best = std::min(best, segment_distance(s, x));
    for (Vec2 p : pieces.points) best = std::min(best, norm(x - p));
    return best;
}

double distance_or_negative(const DomainSpec& spec, std::span<const double> x) {
    require_dim(spec, x);
    double d = -1.0;
    switch (spec.kind) {
        case DomainKind::half_line:
            d = x[0];
            break;
        case DomainKind::interval:
            d = std::min(x[0], spec.length - x[0]);
            break;
        case DomainKind::ball:
            d = spec.radius - norm_span(x);
            break;
        case DomainKind::punctured_space:
            d = norm_span(x);
            break;
        case DomainKind::convex_complement:
            if (spec.shape == ConvexShape::slab) {
                d = std::abs(x[0]) - spec.radius;
            } else {
                const std::size_t s = static_cast<std::size_t>(spec.subspace_dim);
                const double dy = std::max(norm_span(x, 0, s) - spec.radius, 0.0);
                const double dz = norm_span(x, s);
                d = std::hypot(dy, dz);
            }
            break;
        case DomainKind::decorated_ball:
            return distance_or_negative(spec, Vec2{x[0], x[1]});
    }
    return d > 0.0 ? d : -1.0;
}

double distance_or_negative(const DomainSpec& spec, Vec2 x) {
    if (spec.dim != 2) throw ArgumentError("planar point given for a domain of dimension " + std::to_string(spec.dim));
    if (spec.kind != DomainKind::decorated_ball) {
        const std::array<double, 2> a{x.x, x.y};
        return distance_or_negative(spec, std::span<const double>(a));
    }
    const DecoratedGeometry g = decorated_geometry(spec);
    if (!decorated_contains(g, x)) return -1.0;
    const double d = distance_to_pieces(decorated_pieces(g), x);
    return d > 0.0 ? d : -1.0;
}

double distance_to_boundary(const DomainSpec& spec, std::span<const double> x) {
    const double d = distance_or_negative(spec, x);
    if (d <= 0.0) throw DomainMembershipError("point is not in the open domain " + kind_name(spec.kind));
    return d;
}

double distance_to_boundary(const DomainSpec& spec, Vec2 x) {
    const double d = distance_or_negative(spec, x);
    if (d <= 0.0) throw DomainMembershipError("point is not in the open domain " + kind_name(spec.kind));
    return d;
}

std::vector<double> distance_gradient(const DomainSpec& spec, std::span<const double> x) {
    const double d = distance_to_boundary(spec, x);
    std::vector<double> g(x.size(), 0.0);
    auto singular = [] { throw GeometryError("distance is not differentiable at this point"); };
    switch (spec.kind) {
        case DomainKind::half_line:
            g[0] = 1.0;
            break;
        case DomainKind::interval:
            if (std::abs(x[0] - spec.length / 2.0) < 1e-14 * spec.length) singular();
            g[0] = x[0] < spec.length / 2.0 ? 1.0 : -1.0;
            break;
        case DomainKind::ball: {
            const double n = norm_span(x);
            if (n < 1e-300) singular();
            for (std::size_t i = 0; i < x.size(); ++i) g[i] = -x[i] / n;
            break;
        }
        case DomainKind::punctured_space:
            for (std::size_t i = 0; i < x.size(); ++i) g[i] = x[i] / d;
            break;
        case DomainKind::convex_complement:
            if (spec.shape == ConvexShape::slab) {
                g[0] = x[0] > 0.0 ? 1.0 : -1.0;
            } else {
                const std::size_t s = static_cast<std::size_t>(spec.subspace_dim);
                const double ny = norm_span(x, 0, s);
                const double dy = std::max(ny - spec.radius, 0.0);
                if (dy > 0.0)
                    for (std::size_t i = 0; i < s; ++i) g[i] = dy / d * x[i] / ny;
                for (std::size_t i = s; i < x.size(); ++i) g[i] = x[i] / d;
            }
            break;
        case DomainKind::decorated_ball: {
            const double h = 1e-7 * d;
            for (std::size_t i = 0; i < 2; ++i) {
                Point xp(x.begin(), x.end()), xm(x.begin(), x.end());
                xp[i] += h;
                xm[i] -= h;
                const double dp = distance_or_negative(spec, xp), dm = distance_or_negative(spec, xm);
                if (dp <= 0.0 || dm <= 0.0) singular();
                g[i] = (dp - dm) / (2.0 * h);
            }
            break;
        }
    }
    return g;
}

bool in_layer(const DomainSpec& spec, double r, std::span<const double> x) {
    return distance_to_boundary(spec, x) < r;
}

BoundaryPieces clipped_boundary(const DomainSpec& spec, Vec2 c, double R0) {
    if (spec.dim != 2) throw GeometryError("boundary pieces are defined for planar domains only");
    BoundaryPieces out;
    auto add_point = [&](Vec2 p) {
        if (norm(p - c) <= R0) out.points.push_back(p);
    };
    switch (spec.kind) {
        case DomainKind::ball:
            add_clipped_arc(out, {Vec2{}, spec.radius, 0.0, 2.0 * kPi}, c, R0);
            break;
        case DomainKind::punctured_space:
            add_point(Vec2{});
            break;
        case DomainKind::convex_complement:
            if (spec.shape == ConvexShape::slab) {
                const double L = R0 + norm(c) + 1.0;
                add_clipped_segment(out, {{spec.radius, -L}, {spec.radius, L}}, c, R0);
                add_clipped_segment(out, {{-spec.radius, -L}, {-spec.radius, L}}, c, R0);
            } else if (spec.subspace_dim == 0) {
                add_point(Vec2{});
            } else if (spec.subspace_dim == 1) {
                add_clipped_segment(out, {{-spec.radius, 0.0}, {spec.radius, 0.0}}, c, R0);
            } else {
                add_clipped_arc(out, {Vec2{}, spec.radius, 0.0, 2.0 * kPi}, c, R0);
            }
            break;
        case DomainKind::decorated_ball: {
            const BoundaryPieces all = decorated_pieces(decorated_geometry(spec));
            for (const Arc& a : all.arcs) add_clipped_arc(out, a, c, R0);
            for (const Segment& s : all.segments) add_clipped_segment(out, s, c, R0);
            break;
        }
        default:
            throw GeometryError("domain " + kind_name(spec.kind) + " has no planar boundary description");
    }
    return out;
}

double halton(std::uint64_t index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % static_cast<std::uint64_t>(base));
        index /= static_cast<std::uint64_t>(base);
    }
    return r;
}

std::vector<Point> layer_probes(const DomainSpec& spec, double r, int count) {
    if (!(r > 0.0)) throw ArgumentError("layer width must be positive");
    static constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};
    const int d = spec.dim;
    if (d > 8) throw ArgumentError("probe generation supports dimension up to 8");
    std::vector<double> lo(d), hi(d);
    for (int i = 0; i < d; ++i) {
        lo[i] = -r;
        hi[i] = r;
    }
    switch (spec.kind) {
        case DomainKind::half_line:
            lo[0] = 0.0;
            break;
        case DomainKind::interval:
            lo[0] = 0.0;
            hi[0] = spec.length;
            break;
        case DomainKind::ball:
            std::fill(lo.begin(), lo.end(), -spec.radius);
            std::fill(hi.begin(), hi.end(), spec.radius);
            break;
        case DomainKind::punctured_space:
            break;
        case DomainKind::convex_complement:
            if (spec.shape == ConvexShape::slab) {
                lo[0] = -(spec.radius + r);
                hi[0] = spec.radius + r;
                for (int i = 1; i < d; ++i) {
                    lo[i] = -1.0;
                    hi[i] = 1.0;
                }
            } else {
                for (int i = 0; i < spec.subspace_dim; ++i) {
                    lo[i] = -(spec.radius + r);
                    hi[i] = spec.radius + r;
                }
            }
            break;
        case DomainKind::decorated_ball: {
            double ext = spec.base_radius;
            for (const Tunnel& t : decorated_geometry(spec).tunnels) ext = std::max(ext, t.center + t.rho);
            std::fill(lo.begin(), lo.end(), -ext);
            std::fill(hi.begin(), hi.end(), ext);
            break;
        }
    }
    std::vector<Point> out;
    out.reserve(count);
    const std::uint64_t max_tries = 2000ull * static_cast<std::uint64_t>(std::max(count, 1)) + 100000ull;
    Point x(d);
    for (std::uint64_t idx = 1; static_cast<int>(out.size()) < count; ++idx) {
        if (idx > max_tries) throw SamplingError("layer probes: acceptance rate too low");
        for (int i = 0; i < d; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * halton(idx, kPrimes[i]);
        const double dist = distance_or_negative(spec, x);
        if (dist > 0.0 && dist < r) out.push_back(x);
    }
    return out;
}

VolumeScan volume_scan(const DomainSpec& spec, const Point& center, double R0, const std::vector<double>& r_values,
                       int samples, std::uint64_t seed) {
    if (samples < 10000) throw ArgumentError("volume_scan needs at least 1e4 samples");
    if (r_values.size() < 2) throw ArgumentError("volume_scan needs at least two r values");
    for (std::size_t i = 0; i < r_values.size(); ++i) {
        if (!(r_values[i] > 0.0)) throw ArgumentError("r values must be positive");
        if (i > 0 && !(r_values[i] < r_values[i - 1])) throw ArgumentError("r values must be strictly decreasing");
    }
    if (static_cast<int>(center.size()) != spec.dim) throw ArgumentError("anchor center has the wrong dimension");
    const int d = spec.dim;

    // d_A and the bounding box of A, per dimension class.
    std::function<double(const Point&)> dist_A;
    std::vector<double> alo(d), ahi(d);
    BoundaryPieces pieces;
    std::vector<double> pts1d;
    if (d == 1) {
        for (double p : boundary_points_1d(spec))
            if (std::abs(p - center[0]) <= R0) pts1d.push_back(p);
        if (pts1d.empty()) throw GeometryError("anchor ball does not meet the boundary");
        alo[0] = *std::min_element(pts1d.begin(), pts1d.end());
        ahi[0] = *std::max_element(pts1d.begin(), pts1d.end());
        dist_A = [&](const Point& x) {
            double best = kInf;
            for (double p : pts1d) best = std::min(best, std::abs(x[0] - p));
            return best;
        };
    } else if (d == 2) {
        pieces = clipped_boundary(spec, Vec2{center[0], center[1]}, R0);
        if (pieces.empty()) throw GeometryError("anchor ball does not meet the boundary");
        const Box b = pieces_box(pieces);
        alo = b.lo;
        ahi = b.hi;
        dist_A = [&](const Point& x) { return distance_to_pieces(pieces, Vec2{x[0], x[1]}); };
    } else {
        const double cn = norm_span(center);
        const bool point_boundary = spec.kind == DomainKind::punctured_space ||
                                    (spec.kind == DomainKind::convex_complement &&
                                     spec.shape == ConvexShape::ball_subspace && spec.subspace_dim == 0);
        if (point_boundary) {
            if (cn > R0) throw GeometryError("anchor ball does not meet the boundary");
            std::fill(alo.begin(), alo.end(), 0.0);
            std::fill(ahi.begin(), ahi.end(), 0.0);
            dist_A = [](const Point& x) { return norm_span(x); };
        } else if (spec.kind == DomainKind::ball && cn + spec.radius <= R0) {
            std::fill(alo.begin(), alo.end(), -spec.radius);
            std::fill(ahi.begin(), ahi.end(), spec.radius);
            dist_A = [&](const Point& x) { return distance_or_negative(spec, x); };
        } else {
            throw GeometryError("in dimension >= 3 the anchor must contain the whole boundary");
        }
    }

    UniformStream rng(seed);
    std::vector<double> u(static_cast<std::size_t>(samples) * d);
    for (double& v : u) v = rng.next();

    VolumeScan out;
    out.r_values = r_values;
    Point x(d);
    for (double r : r_values) {
        double box_volume = 1.0;
        for (int i = 0; i < d; ++i) box_volume *= (ahi[i] - alo[i] + 2.0 * r);
        long hits = 0;
        for (int k = 0; k < samples; ++k) {
            for (int i = 0; i < d; ++i) x[i] = alo[i] - r + (ahi[i] - alo[i] + 2.0 * r) * u[static_cast<std::size_t>(k) * d + i];
            if (distance_or_negative(spec, x) <= 0.0) continue;
            if (dist_A(x) < r) ++hits;
        }
        if (hits == 0) throw SamplingError("volume_scan: no sample hit A_r at r = " + std::to_string(r));
        out.volumes.push_back(box_volume * static_cast<double>(hits) / samples);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(r_values.size());
    for (std::size_t i = 0; i < r_values.size(); ++i) {
        const double lx = std::log(r_values[i]), ly = std::log(out.volumes[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return out;
}

HessianReport hessian_condition_check(const DomainSpec& spec, double r, double beta, double gamma, int probes,
                                      double tolerance) {
    if (probes < 100) throw ArgumentError("hessian_condition_check needs at least 100 probes");
    if (gamma < 0.0) throw ArgumentError("gamma must be nonnegative");
    HessianReport rep;
    rep.max_violation = -kInf;
    const int d = spec.dim;
    Point y(d);
    for (const Point& x : layer_probes(spec, r, probes)) {
        const double dist = distance_to_boundary(spec, x);
        const double h = dist / 10.0;
        if (dist < 3.0 * h) {
            ++rep.skipped;
            continue;
        }
        double lap = 0.0;
        bool ok = true;
        for (int i = 0; i < d && ok; ++i) {
            static constexpr double w[5] = {-1.0, 16.0, -30.0, 16.0, -1.0};
            double acc = 0.0;
            for (int k = -2; k <= 2; ++k) {
                y = x;
                y[i] += k * h;
                const double f = k == 0 ? dist : distance_or_negative(spec, y);
                if (f <= 0.0) {
                    ok = false;
                    break;
                }
                acc += w[k + 2] * f;
            }
            lap += acc / (12.0 * h * h);
        }
        if (!ok) {
            ++rep.skipped;
            continue;
        }
        ++rep.evaluated;
        rep.max_violation = std::max(rep.max_violation, std::abs(dist * lap - (beta - 1.0)) - gamma * dist);
    }
    if (rep.evaluated == 0) throw SamplingError("hessian_condition_check: every probe was skipped");
    rep.pass = rep.max_violation <= tolerance;
    return rep;
}

CatalogInfo catalog_info(const DomainSpec& spec, double r0) {
    CatalogInfo info;
    info.dim = spec.dim;
    info.hausdorff_dim = spec.hausdorff_dim;
    info.standard_hardy_formula_applicable = spec.kind != DomainKind::decorated_ball;
    const double beta = spec.dim - spec.hausdorff_dim;
    switch (spec.kind) {
        case DomainKind::half_line:
        case DomainKind::interval:
        case DomainKind::punctured_space:
            info.beta_gamma = std::make_pair(beta, 0.0);
            break;
        case DomainKind::ball:
            if (r0 < spec.radius) info.beta_gamma = std::make_pair(1.0, (spec.dim - 1) / (spec.radius - r0));
            break;
        case DomainKind::convex_complement:
            if (spec.shape == ConvexShape::slab || spec.subspace_dim <= 1)
                info.beta_gamma = std::make_pair(beta, 0.0);
            else
                info.beta_gamma = std::make_pair(beta, (spec.subspace_dim - 1) / spec.radius);
            break;
        case DomainKind::decorated_ball:
            break;
    }
    return info;
}

}  // namespace hardylab

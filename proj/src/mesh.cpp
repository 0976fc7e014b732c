#include "hardylab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>

#include "hardylab/errors.hpp"

namespace hardylab {

namespace {

constexpr double kPi = std::numbers::pi;

struct Column {
    Vec2 anchor, dir;
    double top = 0.0;
    bool free_top = false;
};

double unit_sphere_area(int d) { return 2.0 * std::pow(kPi, d / 2.0) / std::tgamma(d / 2.0); }

// Largest t <= r such that the ray point still has distance t to the boundary.
double ray_hit(const DomainSpec& domain, Vec2 Q, Vec2 u, double r) {
    auto f = [&](double t) { return distance_or_negative(domain, Q + t * u) - t; };
    auto on_ray = [&](double t) { return f(t) >= -(1e-13 + 1e-12 * t); };
    if (on_ray(r)) return r;
    double lo = 0.0, hi = r;
    for (int it = 0; it < 200 && hi - lo > 1e-16 * r; ++it) {
        const double mid = 0.5 * (lo + hi);
        (on_ray(mid) ? lo : hi) = mid;
    }
    return lo;
}

Column make_column(const DomainSpec& domain, Vec2 anchor, Vec2 dir, double r) {
    Column c{anchor, dir, 0.0, false};
    const double hit = ray_hit(domain, anchor, dir, r);
    c.top = std::min(hit, r);
    c.free_top = hit < r * (1.0 - 1e-12);
    return c;
}

double angle_of(Vec2 v) { return std::atan2(v.y, v.x); }

// Rays strictly between n_in and n_out (short rotation) from a corner, plus the rays where
// the medial-axis hit crosses r so that the layer's outer edge is resolved.
void add_sector(std::vector<Column>& cols, const DomainSpec& domain, Vec2 Q, Vec2 n_in, Vec2 n_out, double r,
                int rays) {
    const double a_in = angle_of(n_in);
    const double span = std::atan2(cross(n_in, n_out), dot(n_in, n_out));
    auto hit_at = [&](double frac) { return ray_hit(domain, Q, unit(a_in + span * frac), r); };
    auto reaches = [&](double frac) { return hit_at(frac) >= r * (1.0 - 1e-12); };
    std::vector<double> fracs;
    for (int k = 1; k < rays; ++k) fracs.push_back(static_cast<double>(k) / rays);
    std::vector<double> all = {0.0};
    all.insert(all.end(), fracs.begin(), fracs.end());
    all.push_back(1.0);
    for (std::size_t i = 0; i + 1 < all.size(); ++i) {
        if (reaches(all[i]) == reaches(all[i + 1])) continue;
        double lo = all[i], hi = all[i + 1];
        const bool lo_reaches = reaches(lo);
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (reaches(mid) == lo_reaches ? lo : hi) = mid;
        }
        const double crit = lo_reaches ? lo : hi;
        if (crit > 1e-6 && crit < 1.0 - 1e-6) fracs.push_back(crit);
    }
    std::sort(fracs.begin(), fracs.end());
    fracs.erase(std::unique(fracs.begin(), fracs.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                fracs.end());
    for (double f : fracs) cols.push_back(make_column(domain, Q, unit(a_in + span * f), r));
}

// Points on [a, b] with steps growing geometrically from d0a at a and d0b at b, capped.
std::vector<double> graded_points(double a, double b, double d0a, double d0b, double ratio, double cap) {
    std::vector<double> left{a}, right{b};
    double sl = d0a, sr = d0b;
    while (true) {
        const double gap = right.back() - left.back();
        const double nl = std::min(sl, cap), nr = std::min(sr, cap);
        if (gap <= nl + nr) {
            if (gap > 1.5 * std::max(nl, nr)) left.push_back(left.back() + 0.5 * gap);
            break;
        }
        if (nl <= nr) {
            left.push_back(left.back() + nl);
            sl *= ratio;
        } else {
            right.push_back(right.back() - nr);
            sr *= ratio;
        }
    }
    left.insert(left.end(), right.rbegin(), right.rend());
    return left;
}

std::vector<Column> decorated_columns(const DomainSpec& domain, double r) {
    const DecoratedGeometry g = decorated_geometry(domain);
    const double R = g.base_radius;
    std::vector<Column> cols;
    const int m = static_cast<int>(g.tunnels.size());
    if (m == 0) {
        for (int k = 0; k < 48; ++k) {
            const Vec2 u = unit(2.0 * kPi * k / 48);
            cols.push_back(make_column(domain, R * u, -u, r));
        }
        return cols;
    }
    constexpr int kSectorRays = 8;
    for (int k = 0; k < m; ++k) {
        const Tunnel& t = g.tunnels[k];
        const Tunnel& prev = g.tunnels[(k + m - 1) % m];
        // base arc from the previous tunnel's + corner to this tunnel's - corner
        double phi_a = prev.theta + prev.mouth_base;
        double phi_b = t.theta - t.mouth_base;
        if (phi_b <= phi_a) phi_b += 2.0 * kPi;
        for (double phi : graded_points(phi_a, phi_b, prev.h / R, t.h / R, 1.5, 2.0 * kPi / 48)) {
            const Vec2 u = unit(phi);
            cols.push_back(make_column(domain, R * u, -u, r));
        }
        const Vec2 cm = t.local(t.a0, -t.h), cp = t.local(t.a0, t.h);
        const Vec2 qm = t.local(t.a1, -t.h), qp = t.local(t.a1, t.h);
        const Vec2 S = t.small_center();
        add_sector(cols, domain, cm, -normalized(cm), t.p, r, kSectorRays);
        const std::vector<double> wall =
            graded_points(t.a0, t.a1, t.h / 2.0, t.h / 2.0, 1.5, (t.a1 - t.a0) / 12.0);
        for (double a : wall) cols.push_back(make_column(domain, t.local(a, -t.h), t.p, r));
        add_sector(cols, domain, qm, t.p, normalized(S - qm), r, kSectorRays);
        const double back = t.theta + kPi;
        for (double phi : graded_points(back + t.mouth_small, back + 2.0 * kPi - t.mouth_small, t.h / t.rho,
                                        t.h / t.rho, 1.5, 2.0 * kPi / 32)) {
            const Vec2 u = unit(phi);
            cols.push_back(make_column(domain, S + t.rho * u, -u, r));
        }
        add_sector(cols, domain, qp, normalized(S - qp), -t.p, r, kSectorRays);
        for (auto it = wall.rbegin(); it != wall.rend(); ++it)
            cols.push_back(make_column(domain, t.local(*it, t.h), -t.p, r));
        add_sector(cols, domain, cp, -t.p, -normalized(cp), r, kSectorRays);
    }
    return cols;
}

std::vector<Column> planar_columns(const DomainSpec& domain, double r, const MeshOptions& opt) {
    std::vector<Column> cols;
    const int M = opt.columns;
    if (M < 3) throw ArgumentError("at least three columns are required");
    switch (domain.kind) {
        case DomainKind::ball:
            for (int k = 0; k < M; ++k) {
                const Vec2 u = unit(2.0 * kPi * k / M);
                cols.push_back(make_column(domain, domain.radius * u, -u, r));
            }
            break;
        case DomainKind::punctured_space:
            for (int k = 0; k < M; ++k) cols.push_back(make_column(domain, Vec2{}, unit(2.0 * kPi * k / M), r));
            break;
        case DomainKind::convex_complement: {
            const double a = domain.radius;
            if (domain.shape == ConvexShape::slab) throw GeometryError("slab complements use the 1D path");
            if (domain.subspace_dim == 0) {
                for (int k = 0; k < M; ++k) cols.push_back(make_column(domain, Vec2{}, unit(2.0 * kPi * k / M), r));
            } else if (domain.subspace_dim == 2) {
                for (int k = 0; k < M; ++k) {
                    const Vec2 u = unit(2.0 * kPi * k / M);
                    cols.push_back(make_column(domain, a * u, u, r));
                }
            } else {
                const Vec2 up{0.0, 1.0}, down{0.0, -1.0};
                for (int k = 0; k <= M; ++k) cols.push_back(make_column(domain, {-a + 2.0 * a * k / M, 0.0}, up, r));
                add_sector(cols, domain, {a, 0.0}, up, {1.0, 0.0}, r, 4);
                cols.push_back(make_column(domain, {a, 0.0}, {1.0, 0.0}, r));
                add_sector(cols, domain, {a, 0.0}, {1.0, 0.0}, down, r, 4);
                for (int k = 0; k <= M; ++k) cols.push_back(make_column(domain, {a - 2.0 * a * k / M, 0.0}, down, r));
                add_sector(cols, domain, {-a, 0.0}, down, {-1.0, 0.0}, r, 4);
                cols.push_back(make_column(domain, {-a, 0.0}, {-1.0, 0.0}, r));
                add_sector(cols, domain, {-a, 0.0}, {-1.0, 0.0}, up, r, 4);
            }
            break;
        }
        case DomainKind::decorated_ball:
            return decorated_columns(domain, r);
        default:
            throw GeometryError("no planar mesher for " + kind_name(domain.kind));
    }
    return cols;
}

class NodeRegistry {
public:
    explicit NodeRegistry(LayerMesh& mesh) : mesh_(mesh) {}

    int add(Vec2 anchor, Vec2 dir, double t, bool dirichlet, bool shareable) {
        const Vec2 pos = anchor + t * dir;
        if (shareable) {
            const long ix = std::lround(pos.x / kCell), iy = std::lround(pos.y / kCell);
            for (long dx = -1; dx <= 1; ++dx)
                for (long dy = -1; dy <= 1; ++dy) {
                    auto it = index_.find({ix + dx, iy + dy});
                    if (it == index_.end()) continue;
                    for (int id : it->second)
                        if (norm(mesh_.position(id) - pos) < kCell) {
                            if (dirichlet) mesh_.dirichlet[id] = 1;
                            return id;
                        }
                }
        }
        const int id = static_cast<int>(mesh_.t.size());
        mesh_.anchor.push_back(anchor);
        mesh_.dir.push_back(dir);
        mesh_.t.push_back(t);
        mesh_.dirichlet.push_back(dirichlet ? 1 : 0);
        if (shareable) index_[{std::lround(pos.x / kCell), std::lround(pos.y / kCell)}].push_back(id);
        return id;
    }

private:
    static constexpr double kCell = 1e-9;
    LayerMesh& mesh_;
    std::map<std::pair<long, long>, std::vector<int>> index_;
};

using Split = std::pair<Vec2, Vec2>;

double split_cross(const Split& u, const Split& v) {
    return cross(u.first, v.first) + (cross(u.first, v.second) + cross(u.second, v.first)) + cross(u.second, v.second);
}

// Product of components as (coarse + fine) * (coarse + fine), expanded.
double split_mul(double uc, double uf, double vc, double vf) { return uc * vc + (uc * vf + uf * vc) + uf * vf; }

double signed_area2(const LayerMesh& m, int a, int b, int c) { return split_cross(m.split_edge(a, b), m.split_edge(a, c)); }

void zip(LayerMesh& mesh, const std::vector<int>& A, const std::vector<int>& B) {
    std::size_t i = 0, j = 0;
    auto emit = [&](int a, int b, int c) {
        if (a == b || b == c || a == c) return;
        const double s = signed_area2(mesh, a, b, c);
        if (s == 0.0) return;
        if (s > 0.0)
            mesh.cells.push_back({a, b, c});
        else
            mesh.cells.push_back({a, c, b});
    };
    while (i + 1 < A.size() || j + 1 < B.size()) {
        const bool advance_a =
            j + 1 >= B.size() || (i + 1 < A.size() && mesh.t[A[i + 1]] <= mesh.t[B[j + 1]]);
        if (advance_a) {
            emit(A[i], A[i + 1], B[j]);
            ++i;
        } else {
            emit(A[i], B[j + 1], B[j]);
            ++j;
        }
    }
}

LayerMesh planar_mesh(const DomainSpec& domain, double r, int level, const MeshOptions& opt, bool grow, int n0) {
    LayerMesh mesh;
    mesh.dim = 2;
    mesh.ambient_dim = 2;
    const std::vector<double> grid = graded_nodes(r, level, opt.q, n0, grow);
    const std::vector<Column> cols = planar_columns(domain, r, opt);
    const double half_step = std::pow(opt.q, 0.5 / std::ldexp(1.0, level));
    NodeRegistry reg(mesh);
    std::vector<std::vector<int>> ids(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const Column& col = cols[c];
        auto& v = ids[c];
        v.push_back(reg.add(col.anchor, col.dir, 0.0, true, true));
        for (double t : grid) {
            if (t >= col.top * half_step) break;
            v.push_back(reg.add(col.anchor, col.dir, t, false, false));
        }
        v.push_back(reg.add(col.anchor, col.dir, col.top, !col.free_top, true));
    }
    for (std::size_t c = 0; c < cols.size(); ++c) zip(mesh, ids[c], ids[(c + 1) % cols.size()]);
    return mesh;
}

}  // namespace

std::string path_name(SolverPath path) {
    switch (path) {
        case SolverPath::automatic: return "auto";
        case SolverPath::radial: return "radial";
        case SolverPath::planar: return "planar";
    }
    return "auto";
}

SolverPath path_from_name(const std::string& name) {
    if (name == "auto") return SolverPath::automatic;
    if (name == "radial") return SolverPath::radial;
    if (name == "planar") return SolverPath::planar;
    throw ConfigError("unknown solver path '" + name + "' (auto, radial, planar)");
}

SolverPath resolve_path(const DomainSpec& domain, SolverPath requested) {
    bool radial_ok = false, planar_ok = false;
    SolverPath preferred = SolverPath::radial;
    switch (domain.kind) {
        case DomainKind::half_line:
        case DomainKind::interval:
            radial_ok = true;
            break;
        case DomainKind::ball:
            radial_ok = true;
            planar_ok = domain.dim == 2;
            preferred = planar_ok ? SolverPath::planar : SolverPath::radial;
            break;
        case DomainKind::punctured_space:
            radial_ok = true;
            planar_ok = domain.dim == 2;
            break;
        case DomainKind::convex_complement:
            if (domain.shape == ConvexShape::slab) {
                radial_ok = true;
            } else {
                const int s = domain.subspace_dim;
                radial_ok = s == 0 || s == domain.dim;
                planar_ok = domain.dim == 2;
                preferred = planar_ok && s == 1 ? SolverPath::planar : SolverPath::radial;
                if (planar_ok && s == 2) preferred = SolverPath::planar;
            }
            break;
        case DomainKind::decorated_ball:
            planar_ok = true;
            preferred = SolverPath::planar;
            break;
    }
    const SolverPath p = requested == SolverPath::automatic ? preferred : requested;
    if ((p == SolverPath::radial && !radial_ok) || (p == SolverPath::planar && !planar_ok))
        throw GeometryError("solver path '" + path_name(p) + "' is not available for " + kind_name(domain.kind) +
                            " in dimension " + std::to_string(domain.dim));
    return p;
}

std::vector<double> LayerMesh::ambient_1d(double s) const {
    std::vector<double> x(ambient_dim, 0.0);
    x[0] = ray_origin + ray_sign * s;
    return x;
}

std::size_t LayerMesh::num_dofs() const {
    return static_cast<std::size_t>(std::count(dirichlet.begin(), dirichlet.end(), 0));
}

std::vector<double> graded_nodes(double r, int level, double q, int base_cells, bool grow_range) {
    if (level < 0) throw ArgumentError("level must be nonnegative");
    if (!(q >= 0.3 && q <= 0.9)) throw ArgumentError("grading ratio q must lie in [0.3, 0.9]");
    if (base_cells < 2) throw ArgumentError("at least two base cells are required");
    const double m = std::ldexp(1.0, level);
    const long n = static_cast<long>(base_cells) * (grow_range ? (1L << (2 * level)) : (1L << level));
    const double lq = std::log(q);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (long j = 0; j < n; ++j) out[static_cast<std::size_t>(n - 1 - j)] = r * std::exp((j / m) * lq);
    return out;
}

LayerMesh build_layer_mesh(const DomainSpec& domain, double r, int level, const MeshOptions& opt) {
    validate(domain);
    if (!(r > 0.0)) throw GeometryError("layer width must be positive");
    if (!(r < inradius(domain)))
        throw GeometryError("layer width " + std::to_string(r) + " is not below the inradius " +
                            std::to_string(inradius(domain)));
    const SolverPath path = resolve_path(domain, opt.path);
    const bool grow = opt.grow_range < 0 ? domain.kind != DomainKind::decorated_ball : opt.grow_range != 0;
    const int n0 = opt.base_cells > 0 ? opt.base_cells : (grow ? 8 : 40);

    LayerMesh mesh;
    if (path == SolverPath::planar) {
        mesh = planar_mesh(domain, r, level, opt, grow, n0);
    } else {
        mesh.dim = 1;
        mesh.ambient_dim = domain.dim;
        const int d = domain.dim;
        switch (domain.kind) {
            case DomainKind::half_line:
                break;
            case DomainKind::interval:
                mesh.measure_scale = 2.0;
                break;
            case DomainKind::ball:
                mesh.measure_scale = unit_sphere_area(d);
                mesh.ray_origin = domain.radius;
                mesh.ray_sign = -1.0;
                mesh.measure_power = d - 1;
                break;
            case DomainKind::punctured_space:
                mesh.measure_scale = unit_sphere_area(d);
                mesh.measure_power = d - 1;
                break;
            case DomainKind::convex_complement:
                if (domain.shape == ConvexShape::slab) {
                    mesh.measure_scale = 2.0;
                    mesh.ray_origin = domain.radius;
                } else {
                    mesh.measure_scale = unit_sphere_area(d);
                    mesh.measure_power = d - 1;
                    mesh.ray_origin = domain.subspace_dim == 0 ? 0.0 : domain.radius;
                }
                break;
            case DomainKind::decorated_ball:
                throw GeometryError("decorated_ball has no 1D reduction");
        }
        mesh.t.push_back(0.0);
        for (double t : graded_nodes(r, level, opt.q, n0, grow)) mesh.t.push_back(t);
        mesh.dirichlet.assign(mesh.t.size(), 0);
        mesh.dirichlet.front() = 1;
        mesh.dirichlet.back() = 1;
        for (std::size_t i = 0; i + 1 < mesh.t.size(); ++i)
            mesh.cells.push_back({static_cast<int>(i), static_cast<int>(i + 1), -1});
    }
    mesh.level = level;
    mesh.q = opt.q;
    mesh.r = r;
    mesh.h_level = std::ldexp(1.0, -level);
    return mesh;
}

LayerMesh restrict_support(const LayerMesh& mesh, double inner_radius) {
    if (!(inner_radius >= 0.0 && inner_radius < mesh.r))
        throw ArgumentError("inner radius must lie in [0, layer width)");
    LayerMesh out = mesh;
    out.cells.clear();
    const int k = mesh.cell_size();
    for (const auto& c : mesh.cells) {
        double tc = 0.0;
        for (int i = 0; i < k; ++i) tc += mesh.t[c[i]];
        tc /= k;
        if (tc > inner_radius) {
            out.cells.push_back(c);
        } else {
            for (int i = 0; i < k; ++i) out.dirichlet[c[i]] = 1;
        }
    }
    if (out.cells.empty()) throw GeometryError("restriction removed every cell");
    return out;
}

FormPair assemble_weighted(const LayerMesh& mesh, double k_exp, double m_exp, const CoefficientField* field,
                           ProfileUse profile) {
    if (profile != ProfileUse::none && field == nullptr) throw ArgumentError("profile weighting needs a field");
    FormPair fp;
    fp.node_dof.assign(mesh.num_nodes(), -1);
    for (std::size_t i = 0; i < mesh.num_nodes(); ++i)
        if (!mesh.dirichlet[i]) {
            fp.node_dof[i] = static_cast<int>(fp.dof_node.size());
            fp.dof_node.push_back(static_cast<int>(i));
        }
    const int n = static_cast<int>(fp.dof_node.size());
    if (n == 0) throw GeometryError("mesh has no interior degrees of freedom");

    std::vector<Eigen::Triplet<double>> kt, mt;
    kt.reserve(mesh.num_cells() * 9);
    mt.reserve(mesh.num_cells() * 9);
    const int k = mesh.cell_size();
    for (const auto& c : mesh.cells) {
        double tc = 0.0;
        for (int i = 0; i < k; ++i) tc += mesh.t[c[i]];
        tc /= k;
        if (!(tc > 0.0)) throw QuadratureError("cell centroid lies on the boundary");
        const double lt = std::log(tc);
        double lk = k_exp * lt, lm = m_exp * lt;
        std::vector<double> diag(2, 1.0);
        std::vector<double> x;
        if (mesh.dim == 1) {
            const double base = mesh.ray_origin + mesh.ray_sign * tc;
            const double lmu = std::log(mesh.measure_scale) + mesh.measure_power * std::log(base);
            lk += lmu;
            lm += lmu;
            x = mesh.ambient_1d(tc);
        } else {
            Vec2 p{};
            for (int i = 0; i < 3; ++i) p = p + (1.0 / 3.0) * mesh.position(c[i]);
            x = {p.x, p.y};
        }
        if (profile != ProfileUse::none) {
            const double cval = profile_value(*field, x);
            if (!(cval > 0.0)) throw FieldValidityError("profile is not positive at a cell centroid");
            lk += std::log(cval);
            if (profile == ProfileUse::both) lm += std::log(cval);
            diag = identity_plus_e(*field, std::max(mesh.ambient_dim, 2), tc);
            if (diag[0] <= 0.0 || diag[1] <= 0.0) throw FieldValidityError("I + E is not positive definite");
        }
        double kl[3][3] = {}, ml[3][3] = {};
        if (mesh.dim == 1) {
            const double h = mesh.t[c[1]] - mesh.t[c[0]];
            const double kk = diag[0] * std::exp(lk - std::log(h));
            const double mm = std::exp(lm + std::log(h)) / 6.0;
            kl[0][0] = kl[1][1] = kk;
            kl[0][1] = kl[1][0] = -kk;
            ml[0][0] = ml[1][1] = 2.0 * mm;
            ml[0][1] = ml[1][0] = mm;
        } else {
            const Split e[3] = {mesh.split_edge(c[1], c[2]), mesh.split_edge(c[2], c[0]),
                                mesh.split_edge(c[0], c[1])};
            const double area2 = signed_area2(mesh, c[0], c[1], c[2]);
            if (!(area2 > 0.0)) throw QuadratureError("degenerate or inverted triangle");
            const double sk = std::exp(lk - std::log(2.0 * area2));
            const double sm = std::exp(lm + std::log(area2)) / 24.0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    const double yy = split_mul(e[i].first.y, e[i].second.y, e[j].first.y, e[j].second.y);
                    const double xx = split_mul(e[i].first.x, e[i].second.x, e[j].first.x, e[j].second.x);
                    kl[i][j] = sk * (diag[0] * yy + diag[1] * xx);
                    ml[i][j] = sm * (i == j ? 2.0 : 1.0);
                }
        }
        for (int i = 0; i < k; ++i) {
            const int di = fp.node_dof[c[i]];
            if (di < 0) continue;
            for (int j = 0; j < k; ++j) {
                const int dj = fp.node_dof[c[j]];
                if (dj < 0) continue;
                kt.emplace_back(di, dj, kl[i][j]);
                mt.emplace_back(di, dj, ml[i][j]);
            }
        }
    }
    fp.K.resize(n, n);
    fp.M.resize(n, n);
    fp.K.setFromTriplets(kt.begin(), kt.end());
    fp.M.setFromTriplets(mt.begin(), mt.end());
    return fp;
}

FormPair assemble(const LayerMesh& mesh, const CoefficientField& field, bool use_profile) {
    return assemble_weighted(mesh, field.delta, field.delta - 2.0, &field,
                             use_profile ? ProfileUse::stiffness : ProfileUse::none);
}

void dump_mesh(const LayerMesh& mesh, std::ostream& out) {
    out << "# layer mesh dim " << mesh.dim << " level " << mesh.level << " r " << mesh.r << "\n";
    out << "nodes " << mesh.num_nodes() << "\n";
    for (std::size_t i = 0; i < mesh.num_nodes(); ++i) {
        if (mesh.dim == 2) {
            const Vec2 p = mesh.position(i);
            out << i << ' ' << p.x << ' ' << p.y << ' ' << mesh.t[i] << ' ' << int(mesh.dirichlet[i]) << "\n";
        } else {
            out << i << ' ' << mesh.t[i] << ' ' << int(mesh.dirichlet[i]) << "\n";
        }
    }
    out << "cells " << mesh.num_cells() << "\n";
    for (const auto& c : mesh.cells) {
        out << c[0] << ' ' << c[1];
        if (mesh.dim == 2) out << ' ' << c[2];
        out << "\n";
    }
}

}  // namespace hardylab

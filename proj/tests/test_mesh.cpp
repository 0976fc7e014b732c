#include <cmath>
#include <numbers>

#include <doctest.h>

#include "hardylab/mesh.hpp"
#include "hardylab/spectral.hpp"
#include "oracles.hpp"

using namespace hardylab;

namespace {

double mesh_area(const LayerMesh& m) {
    double a = 0.0;
    for (const auto& c : m.cells) {
        const Vec2 p = m.position(c[0]), q = m.position(c[1]), s = m.position(c[2]);
        a += 0.5 * std::abs((q.x - p.x) * (s.y - p.y) - (q.y - p.y) * (s.x - p.x));
    }
    return a;
}

// Nodal values of f(t) on the dofs of a form pair.
Eigen::VectorXd nodal(const LayerMesh& m, const FormPair& fp, double (*f)(double, double), double r) {
    Eigen::VectorXd v(fp.dof_node.size());
    for (std::size_t j = 0; j < fp.dof_node.size(); ++j) v[j] = f(m.t[fp.dof_node[j]], r);
    return v;
}

double bump(double t, double r) { return std::sin(std::numbers::pi * t / r); }

}  // namespace

TEST_CASE("graded nodes") {
    const auto grow = graded_nodes(0.3, 1, 0.5, 4, true);
    const auto fixed = graded_nodes(0.3, 1, 0.5, 4, false);
    CHECK(grow.back() == doctest::Approx(0.3));
    CHECK(fixed.back() == doctest::Approx(0.3));
    CHECK(grow.size() == 16);
    CHECK(fixed.size() == 8);
    for (std::size_t i = 1; i < grow.size(); ++i) CHECK(grow[i] / grow[i - 1] == doctest::Approx(std::sqrt(2.0)));
    CHECK(fixed.front() == doctest::Approx(0.3 * std::pow(0.5, 3.5)));
}

TEST_CASE("one-dimensional layer mesh") {
    const LayerMesh m = build_layer_mesh(DomainSpec::half_line(), 0.3, 0);
    CHECK(m.dim == 1);
    CHECK(m.t.front() == 0.0);
    CHECK(m.t.back() == doctest::Approx(0.3));
    CHECK(m.dirichlet.front());
    CHECK(m.dirichlet.back());
    CHECK(m.num_dofs() == m.num_nodes() - 2);
}

TEST_CASE("planar meshes tile the polygonal layer") {
    const int n = 32;
    const double poly = n / 2.0 * std::sin(2.0 * std::numbers::pi / n);
    MeshOptions o;
    o.path = SolverPath::planar;
    for (int level : {0, 1}) {
        const LayerMesh disk = build_layer_mesh(DomainSpec::ball(2, 1.0), 0.3, level, o);
        CHECK(mesh_area(disk) == doctest::Approx(poly * (1.0 - 0.7 * 0.7)).epsilon(1e-12));
        const LayerMesh punct = build_layer_mesh(DomainSpec::punctured_space(2), 0.3, level, o);
        CHECK(mesh_area(punct) == doctest::Approx(poly * 0.09).epsilon(1e-12));
    }
    const LayerMesh disk = build_layer_mesh(DomainSpec::ball(2, 1.0), 0.3, 0, o);
    for (const auto& c : disk.cells) {
        const auto [a0, a1] = disk.split_edge(c[0], c[1]);
        const Vec2 e = disk.edge(c[0], c[1]);
        CHECK((a0 + a1 - e).x == doctest::Approx(0.0));
    }
}

TEST_CASE("decorated mesh resolves the tunnels") {
    const DomainSpec s = DomainSpec::decorated_ball(0.05);
    const LayerMesh m = build_layer_mesh(s, 0.1, 0);
    const DecoratedGeometry g = decorated_geometry(s);
    // Count distinct lateral node positions across the narrowest tunnel at mid length.
    const Tunnel& t = g.tunnels.back();
    const double mid = 0.5 * (t.a0 + t.a1), band = 0.25 * (t.a1 - t.a0);
    std::vector<double> lateral;
    for (std::size_t i = 0; i < m.num_nodes(); ++i) {
        const Vec2 p = m.position(i);
        const double ax = p.x * t.e.x + p.y * t.e.y, la = p.x * t.p.x + p.y * t.p.y;
        if (std::abs(ax - mid) < band && std::abs(la) < t.h * (1.0 + 1e-9)) lateral.push_back(la);
    }
    std::sort(lateral.begin(), lateral.end());
    lateral.erase(std::unique(lateral.begin(), lateral.end(),
                              [&](double a, double b) { return std::abs(a - b) < 1e-3 * t.h; }),
                  lateral.end());
    CHECK(lateral.size() >= 5);  // at least 4 cells across
}

TEST_CASE("weighted forms converge to the integrals of a smooth profile") {
    // With t = u^2: int t^(-1/2) sin^2 = 2 int sin^2(pi u^2 / r) du and int t^(3/2) (pi/r)^2 cos^2 likewise.
    const double r = 0.3, pi = std::numbers::pi;
    const double m_ref = oracle::simpson([&](double u) { return 2.0 * std::pow(std::sin(pi * u * u / r), 2); }, 0.0,
                                         std::sqrt(r), 20000);
    const double k_ref = oracle::simpson(
        [&](double u) { return 2.0 * std::pow(u, 4) * std::pow(pi / r * std::cos(pi * u * u / r), 2); }, 0.0,
        std::sqrt(r), 20000);
    double prev_err = 1.0;
    for (int level : {2, 4}) {
        const LayerMesh m = build_layer_mesh(DomainSpec::half_line(), r, level);
        const FormPair fp = assemble_weighted(m, 1.5, -0.5);
        const Eigen::VectorXd v = nodal(m, fp, bump, r);
        const double mv = v.dot(fp.M * v), kv = v.dot(fp.K * v);
        const double err = std::abs(mv / m_ref - 1.0) + std::abs(kv / k_ref - 1.0);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 0.01);
}

TEST_CASE("Hardy pair has matching sparsity and positive mass") {
    const LayerMesh m = build_layer_mesh(DomainSpec::ball(2, 1.0), 0.2, 1);
    const FormPair fp = assemble(m, CoefficientField::exact(1.5));
    CHECK(fp.K.rows() == static_cast<Eigen::Index>(m.num_dofs()));
    CHECK(fp.M.rows() == fp.K.rows());
    for (Eigen::Index i = 0; i < fp.M.rows(); ++i) CHECK(fp.M.coeff(i, i) > 0.0);
    const Eigen::SparseMatrix<double> asym = fp.K - Eigen::SparseMatrix<double>(fp.K.transpose());
    CHECK(asym.norm() <= 1e-12 * fp.K.norm());
}

#include "cocube/cube_subspace.hpp"

#include <stdexcept>

namespace cocube {

EdgeColoring::EdgeColoring(unsigned n, unsigned m)
    : n_(static_cast<std::uint8_t>(n)), m_(static_cast<std::uint8_t>(m)), colors_(slot_count(n), 0) {
    if (n > kMaxVertices) throw std::invalid_argument("EdgeColoring: at most 12 vertices supported");
    if (m == 0 || m > gf2::kMaxDim) throw std::invalid_argument("EdgeColoring: color dimension must be 1..4");
}

EdgeColoring::EdgeColoring(unsigned n, unsigned m, std::vector<std::uint8_t> colors) : EdgeColoring(n, m) {
    if (colors.size() != slot_count(n)) throw std::invalid_argument("EdgeColoring: need one color per edge");
    for (auto c : colors) {
        if (c >= (1u << m)) throw std::invalid_argument("EdgeColoring: color out of range");
    }
    colors_ = std::move(colors);
}

void EdgeColoring::set_color(unsigned i, unsigned j, unsigned c) {
    if (i == j || i >= n_ || j >= n_) throw std::invalid_argument("EdgeColoring: invalid edge");
    if (c >= (1u << m_)) throw std::invalid_argument("EdgeColoring: color out of range");
    colors_[edge_slot(i, j)] = static_cast<std::uint8_t>(c);
}

Subspace Subspace::from_basis(std::vector<EdgeSet> basis) {
    if (basis.empty()) throw std::invalid_argument("Subspace: empty basis");
    if (basis.size() > 8) throw std::invalid_argument("Subspace: dimension above 8 not supported");
    Subspace s;
    s.n_ = basis.front().n();
    s.members_.assign(std::size_t{1} << basis.size(), EdgeSet(s.n_));
    for (std::size_t k = 1; k < s.members_.size(); ++k) {
        // Gray-style build: member(k) = member(k without its lowest bit) ^ basis[lowest bit].
        const unsigned low = static_cast<unsigned>(std::countr_zero(k));
        s.members_[k] = s.members_[k & (k - 1)] ^ basis[low];
    }
    // Rank: count members that are zero; there are 2^(dim - rank) of them.
    std::size_t zeros = 0;
    for (const auto& g : s.members_) zeros += g.empty() ? 1 : 0;
    s.rank_ = static_cast<unsigned>(basis.size()) - static_cast<unsigned>(std::countr_zero(zeros));
    s.basis_ = std::move(basis);
    return s;
}

EdgeColoring coloring_from_perm(const Perm8& p) {
    if (p(0) != 0) throw std::invalid_argument("coloring_from_perm: permutation must fix 0");
    EdgeColoring c(8, 3);
    for (unsigned j = 1; j < 8; ++j) {
        for (unsigned i = 0; i < j; ++i) c.set_color(i, j, p(i ^ j));
    }
    return c;
}

Subspace subspace_from_coloring(const EdgeColoring& c) {
    return subspace_from_coloring(c, gf2::BilinearForm::standard(c.m()));
}

Subspace subspace_from_coloring(const EdgeColoring& c, const gf2::BilinearForm& form) {
    if (form.dim() != c.m()) throw std::invalid_argument("subspace_from_coloring: form dimension mismatch");
    std::vector<EdgeSet> basis;
    for (unsigned t = 0; t < c.m(); ++t) {
        EdgeSet v(c.n());
        for (unsigned s = 0; s < slot_count(c.n()); ++s) {
            if (form(c.color_of_slot(s), 1u << t)) v.set_slot(s);
        }
        basis.push_back(v);
    }
    return Subspace::from_basis(std::move(basis));
}

EdgeColoring coloring_from_basis(const std::vector<EdgeSet>& basis) {
    if (basis.empty()) throw std::invalid_argument("coloring_from_basis: empty basis");
    const unsigned n = basis.front().n();
    EdgeColoring c(n, static_cast<unsigned>(basis.size()));
    std::vector<std::uint8_t> colors(slot_count(n), 0);
    for (unsigned t = 0; t < basis.size(); ++t) {
        if (basis[t].n() != n) throw std::invalid_argument("coloring_from_basis: vertex count mismatch");
        for (unsigned s = 0; s < colors.size(); ++s) {
            if (basis[t].test_slot(s)) colors[s] |= static_cast<std::uint8_t>(1u << t);
        }
    }
    return EdgeColoring(n, static_cast<unsigned>(basis.size()), std::move(colors));
}

Certificate verify_cocube(const Subspace& s) {
    Stopwatch clock;
    if (s.n() != 8 || s.dim() != 3) throw std::invalid_argument("verify_cocube: need a 3-dim subspace of K_8");
    auto cert = Certificate::begin("lemma-V");
    Json basis = Json::array();
    for (const auto& b : s.basis()) basis.push_back(b.canonical());
    cert.inputs["basis"] = basis;
    cert.inputs["rank"] = s.rank();
    Json complements = Json::object();
    unsigned cubes = 0;
    for (unsigned k = 1; k < 8; ++k) {
        const EdgeSet comp = complement(s.member(k));
        complements[std::to_string(k)] = comp.canonical();
        const bool fast = is_cube(comp);
        const bool oracle = is_cube_by_isomorphism(comp);
        if (fast && oracle) {
            ++cubes;
            continue;
        }
        Json w = {{"k", k}, {"complement", comp.canonical()}, {"fast_check", fast}, {"isomorphism_check", oracle},
                  {"edges", comp.edge_count()}};
        Triangle t(0, 1, 2);
        if (find_triangle(comp, &t)) w["triangle"] = t.to_string();
        cert.falsify(std::move(w));
    }
    cert.counters["complements"] = complements;
    cert.counters["cubes"] = cubes;
    cert.conclude();
    cert.elapsed_ms = clock.elapsed_ms();
    return cert;
}

Certificate check_triangle_regularity(const EdgeColoring& c) {
    Stopwatch clock;
    if (c.m() != 3) throw std::invalid_argument("check_triangle_regularity: need Z_2^3 colours");
    auto cert = Certificate::begin("noext-triangle-regularity");
    cert.inputs["n"] = c.n();
    cert.inputs["colors"] = c.colors();
    unsigned checked = 0;
    for (const auto& t : triangles_of(c.n())) {
        const unsigned x = c.color(t.a, t.b);
        const unsigned y = c.color(t.a, t.c);
        const unsigned z = c.color(t.b, t.c);
        ++checked;
        if (!gf2::GF2Map::from_images(3, {x, y, z}).is_regular()) {
            cert.falsify({{"triangle", t.to_string()}, {"colors", {x, y, z}}});
        }
    }
    cert.counters["triangles"] = checked;
    cert.conclude();
    cert.elapsed_ms = clock.elapsed_ms();
    return cert;
}

Certificate derive_n_bound(const EdgeColoring& c) {
    Stopwatch clock;
    auto cert = Certificate::begin("noext-n-bound");
    cert.inputs["n"] = c.n();
    cert.inputs["m"] = c.m();
    Json tables = Json::array();
    for (unsigned v = 0; v < c.n(); ++v) {
        std::vector<unsigned> incident;
        unsigned seen = 0;
        bool distinct = true;
        for (unsigned u = 0; u < c.n(); ++u) {
            if (u == v) continue;
            const unsigned col = c.color(u, v);
            incident.push_back(col);
            if (col == 0 || ((seen >> col) & 1u)) distinct = false;
            seen |= 1u << col;
        }
        tables.push_back(incident);
        if (!distinct) cert.falsify({{"vertex", v}, {"incident_colors", incident}});
    }
    const unsigned nonzero_colors = (1u << c.m()) - 1;
    cert.counters["vertex_color_tables"] = tables;
    cert.counters["max_vertices"] = nonzero_colors + 1;
    if (c.n() > nonzero_colors + 1 && cert.status != Status::falsified) {
        cert.falsify({{"reason", "more incident edges than nonzero colours"}, {"n", c.n()}});
    }
    cert.conclude();
    cert.elapsed_ms = clock.elapsed_ms();
    return cert;
}

}  // namespace cocube

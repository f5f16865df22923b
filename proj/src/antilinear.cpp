#include "cocube/antilinear.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "cocube/parallel.hpp"

namespace cocube {

namespace {

using gf2::BilinearForm;
using gf2::dot;

const BilinearForm& standard3() {
    static const BilinearForm form = BilinearForm::standard(3);
    return form;
}

bool is_bijection(const Perm8::Table& t) {
    unsigned seen = 0;
    for (auto v : t) {
        if (v > 7) return false;
        seen |= 1u << v;
    }
    return seen == 0xFFu;
}

}  // namespace

Perm8 Perm8::identity() { return Perm8(Table{0, 1, 2, 3, 4, 5, 6, 7}); }

Perm8 Perm8::from_images(const Table& images) {
    if (!is_bijection(images)) throw std::invalid_argument("Perm8: images do not form a permutation of 0..7");
    return Perm8(images);
}

Perm8 Perm8::parse_cycles(std::string_view text) {
    Table images{0, 1, 2, 3, 4, 5, 6, 7};
    unsigned used = 0;
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) -> void {
        throw std::invalid_argument("Perm8: cannot parse \"" + std::string(text) + "\": " + why);
    };
    while (pos < text.size()) {
        if (text[pos] == ' ') {
            ++pos;
            continue;
        }
        if (text[pos] != '(') fail("expected '('");
        ++pos;
        std::vector<unsigned> cycle;
        while (pos < text.size() && text[pos] != ')') {
            const char c = text[pos++];
            if (c == ' ' || c == ',') continue;
            if (c < '0' || c > '7') fail(std::string("symbol '") + c + "' is not a digit 0-7");
            const unsigned v = static_cast<unsigned>(c - '0');
            if ((used >> v) & 1u) fail("repeated symbol " + std::to_string(v));
            used |= 1u << v;
            cycle.push_back(v);
        }
        if (pos >= text.size()) fail("unterminated cycle");
        ++pos;
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            images[cycle[k]] = static_cast<std::uint8_t>(cycle[(k + 1) % cycle.size()]);
        }
    }
    return Perm8(images);
}

Perm8 Perm8::parse_images(std::string_view text) {
    if (text.size() != 8) throw std::invalid_argument("Perm8: image string must have 8 digits");
    Table images{};
    for (unsigned k = 0; k < 8; ++k) {
        if (text[k] < '0' || text[k] > '7') throw std::invalid_argument("Perm8: image digit out of range");
        images[k] = static_cast<std::uint8_t>(text[k] - '0');
    }
    return from_images(images);
}

Perm8 Perm8::inverse() const {
    Table inv{};
    for (unsigned x = 0; x < 8; ++x) inv[images_[x]] = static_cast<std::uint8_t>(x);
    return Perm8(inv);
}

Perm8 Perm8::after(const Perm8& other) const {
    Table out{};
    for (unsigned x = 0; x < 8; ++x) out[x] = images_[other.images_[x]];
    return Perm8(out);
}

std::string Perm8::to_cycles() const {
    std::string out;
    unsigned seen = 0;
    for (unsigned start = 0; start < 8; ++start) {
        if ((seen >> start) & 1u || images_[start] == start) continue;
        out += '(';
        for (unsigned x = start; !((seen >> x) & 1u); x = images_[x]) {
            seen |= 1u << x;
            out += static_cast<char>('0' + x);
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

std::string Perm8::to_image_string() const {
    std::string out;
    for (auto v : images_) out += static_cast<char>('0' + v);
    return out;
}

std::array<std::array<std::uint8_t, 3>, 7> fano_lines(const BilinearForm& form) {
    if (form.dim() != 3) throw std::invalid_argument("fano_lines: form must be on Z_2^3");
    std::array<std::array<std::uint8_t, 3>, 7> lines{};
    for (unsigned x = 1; x < 8; ++x) {
        unsigned k = 0;
        for (unsigned y = 1; y < 8 && k < 3; ++y) {
            if (form(x, y) == 0) lines[x - 1][k++] = static_cast<std::uint8_t>(y);
        }
    }
    return lines;
}

bool is_antilinear(const Perm8& p) {
    if (p(0) != 0) return false;
    for (const auto& line : fano_lines(standard3())) {
        if ((p(line[0]) ^ p(line[1]) ^ p(line[2])) == 0) return false;
    }
    return true;
}

std::array<unsigned, 8> signature_values(const Perm8::Table& table, const BilinearForm& form) {
    if (form.dim() != 3) throw std::invalid_argument("signature: form must be on Z_2^3");
    std::array<unsigned, 8> sigma{};
    for (unsigned x = 0; x < 8; ++x) {
        unsigned acc = 0;
        for (unsigned y = 0; y < 8; ++y) {
            if (form(x, y) == 0) acc ^= table[y];
        }
        sigma[x] = acc;
    }
    return sigma;
}

gf2::GF2Map signature(const Perm8& p, const BilinearForm& form) {
    if (p(0) != 0) throw std::invalid_argument("signature: permutation must fix 0, got " + p.to_cycles());
    const auto sigma = signature_values(p.images(), form);
    try {
        return gf2::GF2Map::from_table(3, std::vector<unsigned>(sigma.begin(), sigma.end()));
    } catch (const std::invalid_argument& e) {
        throw std::logic_error("signature of " + p.to_cycles() + " is not linear: " + e.what());
    }
}

bool is_fano(const Perm8& p, const BilinearForm& form) {
    if (!is_antilinear(p)) return false;
    const auto sigma = signature_values(p.images(), form);
    for (unsigned x = 0; x < 8; ++x) {
        if (sigma[x] != x) return false;
    }
    return true;
}

std::vector<Perm8> permutations_fixing_zero() {
    std::vector<Perm8> out;
    out.reserve(5040);
    Perm8::Table t{0, 1, 2, 3, 4, 5, 6, 7};
    do {
        out.push_back(Perm8::from_images(t));
    } while (std::next_permutation(t.begin() + 1, t.end()));
    return out;
}

std::vector<Perm8> enumerate_antilinear(unsigned workers) {
    const auto all = permutations_fixing_zero();
    const auto keep = parallel_filter(all.size(), workers, [&](std::size_t k) { return is_antilinear(all[k]); });
    std::vector<Perm8> out;
    for (auto k : keep) out.push_back(all[k]);
    return out;
}

std::vector<Perm8> enumerate_fano(const BilinearForm& form) {
    std::vector<Perm8> out;
    for (const auto& p : enumerate_antilinear()) {
        if (is_fano(p, form)) out.push_back(p);
    }
    return out;
}

std::vector<Perm8> enumerate_fano_from_basis() {
    std::vector<Perm8> out;
    for (unsigned p1 = 1; p1 < 8; ++p1) {
        if (dot(1, p1) != 1) continue;
        for (unsigned p2 = 1; p2 < 8; ++p2) {
            if (dot(2, p2) != 1 || dot(1, p2) != (dot(2, p1) ^ 1u)) continue;
            for (unsigned p4 = 1; p4 < 8; ++p4) {
                if (dot(4, p4) != 1 || dot(1, p4) != (dot(4, p1) ^ 1u) || dot(2, p4) != (dot(4, p2) ^ 1u)) continue;
                Perm8::Table t{};
                t[0] = 0;
                t[1] = static_cast<std::uint8_t>(p1);
                t[2] = static_cast<std::uint8_t>(p2);
                t[4] = static_cast<std::uint8_t>(p4);
                t[3] = static_cast<std::uint8_t>(p1 ^ p2 ^ 4);
                t[5] = static_cast<std::uint8_t>(p1 ^ p4 ^ 2);
                t[6] = static_cast<std::uint8_t>(p2 ^ p4 ^ 1);
                t[7] = static_cast<std::uint8_t>(p1 ^ p2 ^ p4 ^ 7);
                if (!is_bijection(t)) continue;
                const auto p = Perm8::from_images(t);
                if (is_fano(p)) out.push_back(p);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Perm8 compose(const gf2::GF2Map& map, const Perm8& p) {
    if (map.dim() != 3) throw std::invalid_argument("compose: map must act on Z_2^3");
    Perm8::Table t{};
    for (unsigned x = 0; x < 8; ++x) t[x] = static_cast<std::uint8_t>(map.apply(p(x)));
    return Perm8::from_images(t);
}

Factorization factorize(const Perm8& p, const BilinearForm& form) {
    if (!is_antilinear(p)) throw std::invalid_argument("factorize: " + p.to_cycles() + " is not antilinear");
    const auto linear = signature(p, form);
    if (!linear.is_regular()) {
        throw std::logic_error("factorize: signature of antilinear " + p.to_cycles() + " is singular");
    }
    return {linear, compose(linear.inverse(), p)};
}

unsigned check_orth_pair(const Perm8& p, unsigned x, unsigned y, const BilinearForm& form) {
    if (x == 0 || y == 0 || x > 7 || y > 7) throw std::invalid_argument("check_orth_pair: arguments must be nonzero");
    if (x == y) throw std::invalid_argument("check_orth_pair: arguments must be distinct");
    if (!is_fano(p, form)) throw std::invalid_argument("check_orth_pair: " + p.to_cycles() + " is not Fano");
    return form(x, p(y)) ^ form(y, p(x));
}

}  // namespace cocube

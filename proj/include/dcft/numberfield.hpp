#pragma once

// Imaginary quadratic fields: reduced binary quadratic forms, Dirichlet
// composition, class groups, units, ideals in Hermite form, residue rings
// and ray class groups.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dcft/abgroup.hpp"
#include "dcft/error.hpp"
#include "dcft/integer.hpp"
#include "dcft/matrix.hpp"
#include "dcft/smith.hpp"

namespace dcft {

inline Integer isqrt(const Integer& n)
{
    if (n < 0) throw InvalidInput("isqrt of a negative number");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

inline int kronecker(const Integer& a, const Integer& b) { return mpz_kronecker(a.get_mpz_t(), b.get_mpz_t()); }

inline bool is_prime(const Integer& p) { return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 30) != 0; }

inline bool is_squarefree(Integer n)
{
    n = abs(n);
    if (n == 0) return false;
    for (Integer q = 2; q * q <= n; ++q) {
        if (n % q != 0) continue;
        n /= q;
        if (n % q == 0) return false;
    }
    return true;
}

inline bool is_fundamental_discriminant(const Integer& d)
{
    if (d == 0 || d == 1) return false;
    const Integer r = mod(d, Integer(4));
    if (r == 1) return is_squarefree(d);
    if (r != 0) return false;
    const Integer m = d / 4;
    const Integer r4 = mod(m, Integer(4));
    return (r4 == 2 || r4 == 3) && is_squarefree(m);
}

inline void require_imaginary_fundamental(const Integer& d)
{
    if (d >= 0) throw InvalidInput("discriminant " + to_string(d) + " is not negative");
    if (!is_fundamental_discriminant(d)) throw InvalidInput("discriminant " + to_string(d) + " is not fundamental");
}

// ---- binary quadratic forms ------------------------------------------------------

struct QuadForm {
    Integer a, b, c;

    Integer discriminant() const { return b * b - 4 * a * c; }
    Integer operator()(const Integer& x, const Integer& y) const { return a * x * x + b * x * y + c * y * y; }
    QuadForm inverse() const { return {a, -b, c}; }
    std::string to_string() const { return "(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ")"; }

    friend bool operator==(const QuadForm& f, const QuadForm& g) { return f.a == g.a && f.b == g.b && f.c == g.c; }
    friend bool operator<(const QuadForm& f, const QuadForm& g)
    {
        return std::tie(f.a, f.b, f.c) < std::tie(g.a, g.b, g.c);
    }
};

inline bool is_reduced(const QuadForm& f)
{
    if (!(abs(f.b) <= f.a && f.a <= f.c)) return false;
    if ((abs(f.b) == f.a || f.a == f.c) && f.b < 0) return false;
    return true;
}

inline QuadForm reduce_form(QuadForm f)
{
    const Integer d = f.discriminant();
    if (d >= 0 || f.a <= 0) throw InvalidInput("reduce_form: form " + f.to_string() + " is not positive definite");
    for (;;) {
        // Bring b into (-a, a].
        const Integer two_a = 2 * f.a;
        Integer b = mod(f.b, two_a);
        if (b > f.a) b -= two_a;
        f.c = (b * b - d) / (4 * f.a);
        f.b = b;
        if (f.c < f.a) {
            f = {f.c, -f.b, f.a};
            continue;
        }
        break;
    }
    if ((f.a == f.c || abs(f.b) == f.a) && f.b < 0) f.b = -f.b;
    return f;
}

inline QuadForm principal_form(const Integer& d)
{
    if (mod(d, Integer(4)) == 0) return {1, 0, -d / 4};
    return {1, 1, (1 - d) / 4};
}

// One reduced form per class, ordered by a, then |b|, positive b first.
inline std::vector<QuadForm> reduced_forms(const Integer& d)
{
    require_imaginary_fundamental(d);
    std::vector<QuadForm> out;
    for (Integer a = 1; 3 * a * a <= -d; ++a) {
        for (Integer bb = 0; bb <= a; ++bb) {
            for (int s : {1, -1}) {
                const Integer b = s * bb;
                if (s == -1 && bb == 0) continue;
                if (b == -a) continue;
                const Integer num = b * b - d;
                if (num % (4 * a) != 0) continue;
                QuadForm f{a, b, num / (4 * a)};
                if (is_reduced(f)) out.push_back(f);
            }
        }
    }
    return out;
}

// Dirichlet composition via united forms, reduced.
inline QuadForm compose_forms(const QuadForm& f, const QuadForm& g, const Integer& d)
{
    if (f.discriminant() != d || g.discriminant() != d) throw InvalidInput("compose_forms: discriminant mismatch");
    const Integer beta = (f.b + g.b) / 2;
    Integer u1, v1, u, w;
    const Integer e1 = xgcd(f.a, g.a, u1, v1);
    const Integer e = xgcd(e1, beta, u, w);
    const Integer uu = u * u1, vv = u * v1;
    const Integer a3 = f.a * g.a / (e * e);
    const Integer b3 = (uu * f.a * g.b + vv * g.a * f.b + w * (f.b * g.b + d) / 2) / e;
    const Integer two_a3 = 2 * a3;
    Integer b = mod(b3, two_a3);
    if (b > a3) b -= two_a3;
    return reduce_form({a3, b, (b * b - d) / (4 * a3)});
}

// ---- class group -------------------------------------------------------------------

struct IdealClassGroup {
    Integer d;
    FgAbGroup group;
    std::vector<QuadForm> forms;               // reduced representatives, forms[0] principal
    std::vector<std::vector<Integer>> log;     // canonical coordinates of each class
    std::vector<std::size_t> generators;       // class realizing each canonical generator
    std::vector<std::vector<std::size_t>> table;

    std::size_t order() const { return forms.size(); }

    std::size_t index_of(const QuadForm& f) const
    {
        const QuadForm r = reduce_form(f);
        auto it = std::find(forms.begin(), forms.end(), r);
        if (r.discriminant() != d || it == forms.end()) throw InvalidInput("form " + f.to_string() + " has the wrong discriminant");
        return static_cast<std::size_t>(it - forms.begin());
    }

    std::size_t element_order(std::size_t i) const
    {
        std::size_t k = 1;
        for (std::size_t x = i; x != 0; x = table[x][i]) ++k;
        return k;
    }
};

inline IdealClassGroup class_group(const Integer& d)
{
    IdealClassGroup cl;
    cl.d = d;
    cl.forms = reduced_forms(d);
    const std::size_t h = cl.forms.size();
    std::map<QuadForm, std::size_t> pos;
    for (std::size_t i = 0; i < h; ++i) pos[cl.forms[i]] = i;
    cl.table.assign(h, std::vector<std::size_t>(h));
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j) cl.table[i][j] = pos.at(compose_forms(cl.forms[i], cl.forms[j], d));
    auto s = finite_abelian_from_table(h, [&](std::size_t x, std::size_t y) { return cl.table[x][y]; }, 0);
    cl.group = s.group;
    cl.log = std::move(s.log);
    cl.generators = std::move(s.generators);
    return cl;
}

inline std::size_t class_number(const Integer& d) { return reduced_forms(d).size(); }

// ---- the ring of integers -----------------------------------------------------------

// x + y w with w^2 = t w - n: w = sqrt(d)/2 (t = 0) or (1 + sqrt(d))/2 (t = 1).
struct QuadInt {
    Integer x, y;
    friend bool operator==(const QuadInt&, const QuadInt&) = default;
};

struct ImagQuadField {
    Integer d, t, n;

    explicit ImagQuadField(const Integer& disc) : d(disc)
    {
        require_imaginary_fundamental(d);
        if (mod(d, Integer(4)) == 0) {
            t = 0;
            n = -d / 4;
        } else {
            t = 1;
            n = (1 - d) / 4;
        }
    }

    QuadInt mul(const QuadInt& p, const QuadInt& q) const
    {
        return {p.x * q.x - n * p.y * q.y, p.x * q.y + q.x * p.y + t * p.y * q.y};
    }
    QuadInt omega() const { return {0, 1}; }
    Integer norm(const QuadInt& p) const { return p.x * p.x + t * p.x * p.y + n * p.y * p.y; }
    Integer trace(const QuadInt& p) const { return 2 * p.x + t * p.y; }
    std::string to_string(const QuadInt& p) const
    {
        return p.x.get_str() + (p.y < 0 ? " - " : " + ") + abs(p.y).get_str() + "w";
    }
};

inline FgAbGroup unit_group(const Integer& d)
{
    require_imaginary_fundamental(d);
    if (d == -4) return FgAbGroup::cyclic(4);
    if (d == -3) return FgAbGroup::cyclic(6);
    return FgAbGroup::cyclic(2);
}

// A generator of the (cyclic) unit group.
inline QuadInt unit_generator(const ImagQuadField& f)
{
    if (f.d == -4 || f.d == -3) return f.omega();  // i, resp. a primitive sixth root of unity
    return {-1, 0};
}

// ---- ideals -------------------------------------------------------------------------

// Z-basis [a, b + c w], a, c > 0, c | a, c | b, 0 <= b < a.
struct Ideal {
    Integer a, b, c;

    Integer norm() const { return a * c; }
    bool is_unit() const { return a == 1 && c == 1; }
    std::string to_string() const { return "[" + a.get_str() + ", " + b.get_str() + " + " + c.get_str() + "w]"; }
    friend bool operator==(const Ideal&, const Ideal&) = default;
};

inline bool contains(const Ideal& i, const QuadInt& p)
{
    if (p.y % i.c != 0) return false;
    return (p.x - (p.y / i.c) * i.b) % i.a == 0;
}

inline Ideal ideal_from_generators(const ImagQuadField& f, const std::vector<QuadInt>& gens)
{
    // Rows: w-coefficient, then 1-coefficient; columns: g and g w.
    IntMatrix m(2, 2 * gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
        const QuadInt gw = f.mul(gens[k], f.omega());
        m(0, 2 * k) = gens[k].y;
        m(1, 2 * k) = gens[k].x;
        m(0, 2 * k + 1) = gw.y;
        m(1, 2 * k + 1) = gw.x;
    }
    IntMatrix h = hnf(m);
    if (h.cols() < 2 || h(0, 0) == 0 || h(1, 1) == 0) throw InvalidInput("ideal must be nonzero");
    return {h(1, 1), h(1, 0), h(0, 0)};
}

// Validates a Hermite triple {a, b, c} as an ideal of O_F.
inline Ideal make_ideal(const ImagQuadField& f, const Integer& a, const Integer& b, const Integer& c)
{
    if (a <= 0 || c <= 0) throw InvalidInput("ideal: a and c must be positive");
    if (a % c != 0 || b % c != 0 || b < 0 || b >= a) throw InvalidInput("ideal: not in Hermite form");
    Ideal i{a, b, c};
    if (!contains(i, f.mul({a, 0}, f.omega())) || !contains(i, f.mul({b, c}, f.omega())))
        throw InvalidInput("ideal: lattice " + i.to_string() + " is not stable under w");
    return i;
}

inline Ideal principal_ideal(const ImagQuadField& f, const QuadInt& p) { return ideal_from_generators(f, {p}); }

inline Ideal ideal_mul(const ImagQuadField& f, const Ideal& i, const Ideal& j)
{
    const QuadInt gi[2] = {{i.a, 0}, {i.b, i.c}}, gj[2] = {{j.a, 0}, {j.b, j.c}};
    std::vector<QuadInt> g;
    for (const auto& p : gi)
        for (const auto& q : gj) g.push_back(f.mul(p, q));
    return ideal_from_generators(f, g);
}

inline Ideal ideal_pow(const ImagQuadField& f, const Ideal& i, std::size_t e)
{
    Ideal r{1, 0, 1};
    for (std::size_t k = 0; k < e; ++k) r = ideal_mul(f, r, i);
    return r;
}

// Reduced form of the class of I: for the primitive part [a, b' + w] the
// form is (a, -tr(b' + w), N(b' + w)/a).
inline QuadForm ideal_to_form(const ImagQuadField& f, const Ideal& i)
{
    const Integer a = i.a / i.c;
    const QuadInt beta{i.b / i.c, 1};
    return reduce_form({a, -f.trace(beta), f.norm(beta) / a});
}

// (a, b, c) -> [a, (-b + sqrt d)/2].
inline Ideal form_to_ideal(const ImagQuadField& f, const QuadForm& q)
{
    if (q.discriminant() != f.d) throw InvalidInput("form_to_ideal: discriminant mismatch");
    return ideal_from_generators(f, {{q.a, 0}, {(-q.b - f.t) / 2, 1}});
}

// A generator of I when I is principal.
inline std::optional<QuadInt> principal_generator(const ImagQuadField& f, const Ideal& i)
{
    const Integer nn = i.norm();
    // N(x + y w) >= |d| y^2 / 4.
    const Integer ymax = isqrt(4 * nn / (-f.d)) + 1;
    for (Integer y = -ymax; y <= ymax; ++y) {
        if (y % i.c != 0) continue;
        const Integer disc = f.t * f.t * y * y - 4 * (f.n * y * y - nn);
        if (!is_square(disc)) continue;
        const Integer s = isqrt(disc);
        for (const Integer& num : {Integer(-f.t * y + s), Integer(-f.t * y - s)}) {
            if (num % 2 != 0) continue;
            QuadInt p{num / 2, y};
            if (f.norm(p) == nn && contains(i, p)) return p;
        }
    }
    return std::nullopt;
}

// ---- residue rings ---------------------------------------------------------------------

class ResidueRing {
  public:
    ResidueRing(const ImagQuadField& f, const Ideal& j) : f_(f), j_(j)
    {
        if (!j.norm().fits_ulong_p()) throw SizeGuardExceeded("residue ring too large");
    }

    std::size_t size() const { return j_.norm().get_ui(); }

    std::size_t index(const QuadInt& p) const
    {
        const Integer q = floor_div(p.y, j_.c);
        const Integer y = p.y - q * j_.c;
        const Integer x = mod(p.x - q * j_.b, j_.a);
        return static_cast<std::size_t>(Integer(y * j_.a + x).get_ui());
    }

    QuadInt element(std::size_t k) const
    {
        const Integer kk = static_cast<unsigned long>(k);
        return {mod(kk, j_.a), floor_div(kk, j_.a)};
    }

    bool is_unit(const QuadInt& p) const
    {
        return ideal_from_generators(f_, {p, {j_.a, 0}, {j_.b, j_.c}}).is_unit();
    }

    const ImagQuadField& field() const { return f_; }
    const Ideal& modulus() const { return j_; }

  private:
    ImagQuadField f_;
    Ideal j_;
};

inline constexpr std::size_t kDefaultResidueGuard = 200000;

// (O_F/J)^x with canonical coordinates for every unit residue.
struct ResidueUnits {
    FgAbGroup group;
    std::vector<QuadInt> generators;      // residue realizing each canonical generator
    std::vector<QuadInt> units;           // all unit residues
    std::map<std::size_t, std::size_t> position;  // residue index -> position in units
    std::vector<std::vector<Integer>> log;

    std::vector<Integer> coordinates(const ResidueRing& r, const QuadInt& p) const
    {
        auto it = position.find(r.index(p));
        if (it == position.end()) throw InvalidInput("element is not a unit modulo the ideal");
        return log[it->second];
    }
};

inline ResidueUnits residue_units(const ImagQuadField& f, const Ideal& j, std::size_t guard = kDefaultResidueGuard)
{
    ResidueRing r(f, j);
    if (r.size() > guard) throw SizeGuardExceeded("residue ring of size " + std::to_string(r.size()) + " exceeds guard");
    ResidueUnits out;
    for (std::size_t k = 0; k < r.size(); ++k) {
        QuadInt p = r.element(k);
        if (!r.is_unit(p)) continue;
        out.position[k] = out.units.size();
        out.units.push_back(p);
    }
    const std::size_t one = out.position.at(r.index({1, 0}));
    auto mul = [&](std::size_t u, std::size_t v) { return out.position.at(r.index(f.mul(out.units[u], out.units[v]))); };
    auto s = finite_abelian_from_table(out.units.size(), mul, one);
    out.group = s.group;
    out.log = std::move(s.log);
    for (auto g : s.generators) out.generators.push_back(out.units[g]);
    return out;
}

// Order of an element of a finite group in canonical coordinates.
inline Integer element_order(const FgAbGroup& g, const std::vector<Integer>& v)
{
    if (g.free_rank != 0) throw InvalidInput("element_order needs a finite group");
    Integer o = 1;
    for (std::size_t i = 0; i < g.torsion.size(); ++i) o = lcm(o, g.torsion[i] / gcd(g.torsion[i], v[i]));
    return o;
}

// ---- ray class groups -------------------------------------------------------------------

struct RayClassGroup {
    Ideal modulus;
    FgAbGroup group;
    IdealClassGroup class_group;
    ResidueUnits residues;
    std::vector<Integer> unit_image;     // image of the unit generator in residue coordinates
    Integer unit_image_order;
    AbHom from_residues;                 // (O/J)^x -> Cl_J
    AbHom to_class_group;                // Cl_J -> Cl
    std::vector<Ideal> class_lifts;      // ideals prime to J lifting the class generators
};

// A primitive ideal prime to J in the class of the given reduced form.
inline Ideal ideal_in_class_prime_to(const ImagQuadField& f, const QuadForm& target, const Ideal& j)
{
    const Integer nj = j.norm();
    for (Integer m = 1;; ++m) {
        if (gcd(m, nj) != 1) continue;
        for (Integer b = 0; b < m; ++b) {
            const QuadInt beta{b, 1};
            if (f.norm(beta) % m != 0) continue;
            Ideal i{m, b, 1};
            if (ideal_to_form(f, i) == target) return i;
        }
    }
}

// Presented by residue generators and class-generator lifts, modulo the
// residue orders, the unit image and e_j [a_j] = [(alpha_j)] where
// a_j^{e_j} = (alpha_j).
inline RayClassGroup ray_class_group(const ImagQuadField& f, const Ideal& j, std::size_t guard = kDefaultResidueGuard)
{
    RayClassGroup out;
    out.modulus = j;
    out.class_group = class_group(f.d);
    out.residues = residue_units(f, j, guard);
    const ResidueRing ring(f, j);
    const FgAbGroup& rg = out.residues.group;
    const FgAbGroup& cg = out.class_group.group;
    const std::size_t s = rg.generator_count(), t = cg.generator_count();

    out.unit_image = out.residues.coordinates(ring, unit_generator(f));
    out.unit_image_order = element_order(rg, out.unit_image);

    IntMatrix rel(s + t, s + 1 + t);
    for (std::size_t i = 0; i < s; ++i) rel(i, i) = rg.torsion[i];
    for (std::size_t i = 0; i < s; ++i) rel(i, s) = out.unit_image[i];
    for (std::size_t k = 0; k < t; ++k) {
        const QuadForm& g = out.class_group.forms[out.class_group.generators[k]];
        Ideal a = ideal_in_class_prime_to(f, g, j);
        out.class_lifts.push_back(a);
        const Integer e = cg.torsion[k];
        auto alpha = principal_generator(f, ideal_pow(f, a, e.get_ui()));
        if (!alpha) throw ValidationError("class of order " + e.get_str() + " has a non-principal power");
        auto l = out.residues.coordinates(ring, *alpha);
        for (std::size_t i = 0; i < s; ++i) rel(i, s + 1 + k) = -l[i];
        rel(s + k, s + 1 + k) = e;
    }
    Presentation p = present_cokernel(rel);
    out.group = p.group;

    IntMatrix fr(p.group.generator_count(), s);
    for (std::size_t i = 0; i < p.group.generator_count(); ++i)
        for (std::size_t k = 0; k < s; ++k) fr(i, k) = p.to_canonical(i, k);
    out.from_residues = AbHom{rg, p.group, fr}.normalized();

    IntMatrix tc(t, p.group.generator_count());
    for (std::size_t k = 0; k < t; ++k)
        for (std::size_t c = 0; c < p.group.generator_count(); ++c) tc(k, c) = p.from_canonical(s + k, c);
    out.to_class_group = AbHom{p.group, cg, tc}.normalized();
    return out;
}

// ---- primes ---------------------------------------------------------------------------------

enum class PrimeKind { split, ramified, inert };

inline const char* to_string(PrimeKind k)
{
    switch (k) {
    case PrimeKind::split: return "split";
    case PrimeKind::ramified: return "ramified";
    case PrimeKind::inert: return "inert";
    }
    return "?";
}

struct PrimeClass {
    PrimeKind kind = PrimeKind::inert;
    std::optional<QuadForm> form;  // (p, b, c) before reduction, when p is not inert
    std::size_t class_index = 0;   // index into the class list; 0 (principal) for inert p
};

inline PrimeClass prime_ideal_class(const IdealClassGroup& cl, const Integer& p)
{
    if (!is_prime(p)) throw InvalidInput(p.get_str() + " is not prime");
    PrimeClass out;
    const int k = kronecker(cl.d, p);
    if (k == -1) return out;
    out.kind = k == 0 ? PrimeKind::ramified : PrimeKind::split;
    const Integer four_p = 4 * p;
    for (Integer b = mod(cl.d, Integer(2)); b < 2 * p; b += 2) {
        if (mod(b * b - cl.d, four_p) != 0) continue;
        out.form = QuadForm{p, b, (b * b - cl.d) / four_p};
        out.class_index = cl.index_of(*out.form);
        return out;
    }
    throw ValidationError("no form with first coefficient " + p.get_str());
}

// ---- class number by ideal enumeration ---------------------------------------------------------

inline Ideal conjugate_ideal(const ImagQuadField& f, const Ideal& i)
{
    // conj(x + y w) = (x + t y) - y w
    return ideal_from_generators(f, {{i.a, 0}, {i.b + f.t * i.c, -i.c}});
}

// Every class contains an ideal of norm at most the Minkowski bound
// (2/pi) sqrt|d|; I ~ J iff I conj(J) is principal.
inline std::size_t class_number_by_ideals(const Integer& d)
{
    ImagQuadField f(d);
    // 2/pi < 0.6367
    const Integer bound = isqrt(Integer(-d) * 6367 * 6367 / 100000000) + 1;
    std::vector<Ideal> reps;
    for (Integer m = 1; m <= bound; ++m)
        for (Integer b = 0; b < m; ++b) {
            if (f.norm({b, 1}) % m != 0) continue;
            const Ideal i{m, b, 1};
            const Ideal ic = conjugate_ideal(f, i);
            bool known = false;
            for (const auto& r : reps)
                if (principal_generator(f, ideal_mul(f, r, ic))) {
                    known = true;
                    break;
                }
            if (!known) reps.push_back(i);
        }
    return reps.size();
}

}  // namespace dcft

#include "tracehull/data.hpp"

#include <sstream>
#include <tuple>

namespace tracehull::builtin {

namespace {

// Builds a symmetric polynomial from entries (i, j, c) with j <= i: each
// entry contributes c*x^i*y^j and, when i != j, also c*x^j*y^i.
Poly2 symmetric_poly(const std::vector<std::tuple<int, int, const char*>>& entries) {
    Poly2 p;
    for (const auto& [i, j, c] : entries) {
        Rational coeff = Rational::parse_decimal(c);
        p.add_term({i, j}, coeff);
        if (i != j) p.add_term({j, i}, coeff);
    }
    return p;
}

std::vector<std::pair<Rational, Rational>> parse_points(
    const std::vector<std::pair<const char*, const char*>>& raw) {
    std::vector<std::pair<Rational, Rational>> pts;
    pts.reserve(raw.size());
    for (const auto& [x, y] : raw) pts.emplace_back(Rational::parse_decimal(x), Rational::parse_decimal(y));
    return pts;
}

}  // namespace

const Poly2& poly_q() {
    static const Poly2 p = symmetric_poly({
        {1, 0, "-12.543"},
        {2, 0, "53.838"},
        {3, 0, "-12.954"},
        {4, 0, "-13.063"},
        {5, 0, "-7.914"},
        {6, 0, "-2.9"},
        {7, 0, "3.607"},
        {8, 0, "1.575"},
        {1, 1, "124.68"},
        {2, 1, "-183.789"},
        {3, 1, "1.878"},
        {4, 1, "50.255"},
        {2, 2, "117.628"},
        {3, 2, "73.149"},
        {4, 2, "-48.646"},
        {3, 3, "-65.928"},
        {4, 3, "8.734"},
        {4, 4, "1.098"},
    });
    return p;
}

const Poly2& poly_r() {
    static const Poly2 p = symmetric_poly({
        {2, 0, "-24.04"},
        {4, 0, "39.64"},
        {6, 0, "-13.14"},
        {8, 0, "3.82"},
        {1, 1, "-15.76"},
        {3, 1, "-119.88"},
        {2, 2, "484.32"},
        {4, 2, "-153.28"},
        {3, 3, "192.44"},
        {4, 4, "8.2"},
    });
    return p;
}

const Poly2& poly_p1() {
    static const Poly2 p = symmetric_poly({
        {1, 0, "-9.6430622783853"},
        {1, 1, "108.9702541224326"},
        {2, 0, "49.2216326267277"},
        {2, 1, "-180.0171980017891"},
        {2, 2, "125.0609266454326"},
        {3, 0, "-9.225013979636"},
        {3, 1, "6.9445854923998"},
        {3, 2, "68.1838852970187"},
        {3, 3, "-66.0585984730189"},
        {4, 0, "-11.7940568488902"},
        {4, 1, "49.3497768306"},
        {4, 2, "-48.7776655621495"},
        {4, 3, "9.217112694634"},
        {4, 4, "1"},
        {5, 0, "-10.4048835085938"},
        {6, 0, "-3.4018229998967"},
        {7, 0, "4.1057063608821"},
        {8, 0, "1.7252053549918"},
    });
    return p;
}

const Poly2& poly_p2() {
    static const Poly2 p = symmetric_poly({
        {1, 1, "-0.9148488345531369"},
        {2, 0, "-2.0489539067392863"},
        {2, 2, "44.9702636684728257"},
        {3, 1, "-10.7425748658745577"},
        {3, 3, "16.8692193520802346"},
        {4, 0, "3.6839213331709682"},
        {4, 2, "-14.3548663298347627"},
        {4, 4, "1"},
        {6, 0, "-1.4264194026272393"},
        {8, 0, "0.4106920221952855"},
    });
    return p;
}

const std::vector<std::pair<Rational, Rational>>& points_a1() {
    static const auto pts = parse_points({
        {"0.40233388785758", "-0.68162727157206"},
        {"-0.68162490825764", "0.40233317377632"},
        {"-0.03593446385013", "1.4223373527278"},
        {"-0.58181793464029", "1.65045045907013"},
        {"0.59759350821447", "-1.78077844166752"},
        {"1.53829446803677", "1.53829443533382"},
        {"-1.48621983094263", "1.99140650840038"},
        {"1.42233731135369", "-0.03593490350603"},
        {"0.05438775487699", "0.05438886977203"},
        {"-1.78077900893326", "0.59759354704086"},
        {"1.99140617335252", "-1.4862186561741"},
        {"-1.40798021804983", "-1.06840257328206"},
        {"0.59759347905152", "-1.78077910495742"},
        {"-1.48621965507992", "1.99140661320125"},
        {"1.12294676572784", "1.12294624842174"},
        {"1.42233869303903", "-0.03593747650892"},
        {"1.65045062298356", "-0.58181827821828"},
        {"0.40233336753712", "-0.6816247052117"},
        {"-0.68162690245729", "0.40233386944888"},
        {"0.40233322519093", "-0.681625459605"},
        {"1.12294556005286", "1.12294583096732"},
        {"-0.03593985561373", "1.42233955543634"},
        {"-0.58181951983038", "1.65045131684197"},
        {"1.99140650540332", "-1.48621961266743"},
        {"1.65045237751894", "-0.58182231464692"},
        {"-1.78077877657724", "0.59759334939547"},
        {"-1.06840211927449", "-1.4079806720575"},
        {"1.53829124404177", "1.53829176844063"},
        {"-1.40797805061751", "-1.06840474071448"},
        {"1.9914061436234", "-1.48622121985896"},
        {"0.59759450830252", "-1.7807799162483"},
        {"-1.4862239646326", "1.99140795748714"},
        {"-1.40798623761224", "-1.06839655371975"},
    });
    return pts;
}

const std::vector<std::pair<Rational, Rational>>& points_a2() {
    static const auto pts = parse_points({
        {"0.15506049352336642", "0.82103437036363329"},
        {"-1.07751316618925008", "-2"},
        {"-0.55343613654977384", "-1.64723374649387681"},
        {"-0.15506048529352139", "-0.82103434384587391"},
        {"1.64723372391649941", "0.5534361137417255"},
        {"-1.9731805874505989", "-2"},
        {"0.82103437282171523", "0.15506048372780666"},
        {"1.07134858923922885", "-1.47342166359409476"},
        {"-0.82103433524791835", "-0.15506047870672044"},
        {"0.15506046708915971", "0.82103431347805562"},
        {"2", "1.07751316910812552"},
        {"-2", "-1.07751316683949198"},
        {"1.64723377312861428", "0.55343615943553201"},
        {"0.55343612726989892", "1.64723373754207403"},
        {"1.97318058013085052", "2"},
        {"1.07751316252419741", "2"},
        {"0.82103432514680383", "0.1550604774370247"},
        {"1.07134859824340295", "-1.47342165121068827"},
        {"-1.64723372758280026", "-0.5534361192094094"},
        {"-1.64723373704703668", "-0.55343612092654846"},
        {"-0.15506049299061308", "-0.82103439731133801"},
        {"-2", "-1.97318058198809136"},
        {"2", "1.9731805809913704"},
        {"1.47342165529506514", "-1.07134859527358692"},
        {"1.07751320597324756", "2"},
        {"-1.47342164800053422", "1.07134860057755775"},
        {"-2", "-1.97318060745136972"},
        {"-1.47342169316353921", "1.07134856773881076"},
        {"-1.0713485853406953", "1.47342166895573339"},
        {"-1.0775132033440292", "-2"},
        {"1.64723371168303767", "0.55343607239179169"},
        {"2", "1.97318056276917512"},
        {"1.07134859374131587", "-1.47342165740239169"},
    });
    return pts;
}

const CaseAWitness& witness_a1_opt() {
    static const CaseAWitness w{
        {{Rational(2), Rational(0)}, {Rational(1, 2), Rational(-3)}, {Rational(-2, 3), Rational(-2, 3)}},
        {Rational(1, 6), Rational(4, 21), Rational(9, 14)},
        Region::sum_geq(Rational(-2, 3)),
    };
    return w;
}

const CaseAWitness& witness_a2max_opt() {
    static const CaseAWitness w{
        {{Rational(0), Rational(-4)}, {Rational(5, 3), Rational(-2, 3)}, {Rational(-2, 3), Rational(-2, 3)}},
        {Rational(1, 10), Rational(9, 35), Rational(9, 14)},
        Region::product_leq(Rational(-2, 3)),
    };
    return w;
}

const CaseAWitness& witness_a2min_opt() {
    static const CaseAWitness w{
        {{Rational(4), Rational(4)},
         {Rational(-4), Rational(4)},
         {Rational(7, 5), Rational(-6, 5)},
         {Rational(-2, 7), Rational(-6, 5)}},
        {Rational(1, 52), Rational(1, 52), Rational(125, 767), Rational(1225, 1534)},
        Region::product_geq(Rational(-6, 5)),
    };
    return w;
}

Rational bound_q() { return Rational::parse_decimal("-2.47"); }
Rational bound_r() { return Rational::parse_decimal("-1.57"); }
Rational bound_p1() { return Rational::parse_decimal("-2.4763827913319"); }
Rational bound_a1_witness() { return Rational::parse_decimal("-2.4763827913320"); }
Rational bound_p2() { return Rational::parse_decimal("-1.578548220646049"); }
Rational bound_a2_witness() { return Rational::parse_decimal("-1.5785482206460513"); }

std::optional<Poly2> find_poly(const std::string& name) {
    if (name == "q") return poly_q();
    if (name == "r") return poly_r();
    if (name == "p1") return poly_p1();
    if (name == "p2") return poly_p2();
    return std::nullopt;
}

const std::vector<std::pair<Rational, Rational>>* find_points(const std::string& name) {
    if (name == "appendix-a1") return &points_a1();
    if (name == "appendix-a2") return &points_a2();
    return nullptr;
}

const CaseAWitness* find_case_a_witness(const std::string& name) {
    if (name == "a1-opt") return &witness_a1_opt();
    if (name == "a2max-opt") return &witness_a2max_opt();
    if (name == "a2min-opt") return &witness_a2min_opt();
    return nullptr;
}

std::optional<Region> find_region(const std::string& name) {
    if (name == "thm-a1") return Region::sum_geq(bound_q());
    if (name == "thm-a2") return Region::product_geq(bound_r());
    if (name == "p1") return Region::sum_geq(bound_p1());
    if (name == "a1-witness") return Region::sum_geq(bound_a1_witness());
    if (name == "p2") return Region::product_geq(bound_p2());
    if (name == "a2-witness") return Region::product_geq(bound_a2_witness());
    return std::nullopt;
}

std::uint64_t fnv1a64(const std::string& payload) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : payload) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t checksum_poly(const Poly2& p) {
    std::ostringstream os;
    for (const auto& [m, c] : p.terms()) os << m.dx << "," << m.dy << ":" << c.to_fraction_string() << ";";
    return fnv1a64(os.str());
}

std::uint64_t checksum_points(const std::vector<std::pair<Rational, Rational>>& pts) {
    std::ostringstream os;
    for (const auto& [x, y] : pts) os << x.to_fraction_string() << "," << y.to_fraction_string() << ";";
    return fnv1a64(os.str());
}

}  // namespace tracehull::builtin

#include "orthomat/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "orthomat/polysys.hpp"
#include "orthomat/qkernel.hpp"

namespace orthomat::io {

namespace {

constexpr std::string_view builtin_prefix = "builtin:";

struct BuiltinSpec {
    Family family = Family::Explicit;
    std::string param;
};

bool is_builtin(const std::string& source)
{
    return source.rfind(builtin_prefix, 0) == 0;
}

BuiltinSpec parse_builtin(const std::string& source)
{
    std::string rest = source.substr(builtin_prefix.size());
    BuiltinSpec spec;
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
        spec.param = rest.substr(colon + 1);
        rest = rest.substr(0, colon);
    }
    spec.family = parse_family(rest);
    if (spec.family == Family::Explicit || spec.family == Family::FromRecurrence) {
        throw InputError("'" + rest + "' is not a builtin family");
    }
    if (spec.family == Family::QHermite && spec.param.empty()) {
        throw InputError("builtin:q-hermite needs a q parameter, e.g. builtin:q-hermite:1/2");
    }
    if (spec.family != Family::QHermite && !spec.param.empty()) {
        throw InputError("builtin:" + rest + " takes no parameter");
    }
    return spec;
}

template <class K>
K parse_text_scalar(const std::string& s, const std::string& where)
{
    try {
        if constexpr (std::is_same_v<K, Rational>) {
            return parse_rational(s);
        } else {
            if (s.find('/') != std::string::npos) {
                return FieldTraits<K>::from_rational(parse_rational(s));
            }
            std::size_t used = 0;
            if constexpr (std::is_same_v<K, double>) {
                const double v = std::stod(s, &used);
                if (used != s.size()) throw std::invalid_argument(s);
                return v;
            } else {
                (void)used;
                return Wide(s);
            }
        }
    } catch (const std::exception&) {
        throw InputError(where + ": cannot parse '" + s + "' as a " +
                         (is_exact_v<K> ? std::string("rational (\"p/q\", no decimals)") : std::string("number")));
    }
}

const Json& require_array(const Json& doc, const char* key, const std::string& origin)
{
    if (!doc.is_object() || !doc.contains(key)) {
        throw InputError(origin + ": missing \"" + key + "\" array");
    }
    const Json& arr = doc[key];
    if (!arr.is_array()) throw InputError(origin + ": \"" + key + "\" must be an array");
    return arr;
}

template <class K>
std::vector<K> parse_array(const Json& arr, const std::string& where)
{
    std::vector<K> out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(parse_scalar<K>(arr[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

template <class K>
RecurrenceCoefficients<K> builtin_recurrence(const BuiltinSpec& spec, std::size_t count)
{
    using F = FieldTraits<K>;
    if (spec.family == Family::QHermite) {
        const K q = parse_text_scalar<K>(spec.param, "q");
        if (!(q < K(1)) || !(q > K(-1))) throw InputError("q-hermite requires |q| < 1");
        RecurrenceCoefficients<K> rec = q_hermite_recurrence(q, count);
        return RecurrenceCoefficients<K>(rec.a2_from_one(), std::vector<K>(count + 1, K(0)));
    }
    if (spec.family == Family::QuadraticWeight) {
        // No simple closed form; extract exactly from the moments.
        const auto m = catalog_moments<Rational>(spec.family, 2 * (count + 1) + 1);
        const auto sys = build_system(m, count + 1);
        std::vector<K> a2;
        std::vector<K> b;
        for (std::size_t n = 1; n <= count; ++n) a2.push_back(F::from_rational(sys.rec.a2(n)));
        for (std::size_t n = 0; n <= count; ++n) b.push_back(F::from_rational(sys.rec.b(n)));
        return RecurrenceCoefficients<K>(std::move(a2), std::move(b));
    }
    std::vector<K> a2;
    for (std::size_t n = 1; n <= count; ++n) {
        const unsigned long un = n;
        Rational v;
        switch (spec.family) {
        case Family::Gaussian: v = Rational(un); break;
        case Family::Uniform: v = Rational(un * un, 4 * un * un - 1); break;
        case Family::Semicircle: v = Rational(1, 4); break;
        case Family::Chebyshev1: v = n == 1 ? Rational(1, 2) : Rational(1, 4); break;
        default: throw InputError("family '" + family_id(spec.family) + "' has no builtin recurrence");
        }
        a2.push_back(F::from_rational(v));
    }
    return RecurrenceCoefficients<K>(std::move(a2), std::vector<K>(count + 1, K(0)));
}

}  // namespace

Mode parse_mode(const std::string& s)
{
    if (s == "float") return Mode::Float;
    if (s == "wide") return Mode::Wide;
    if (s == "rational") return Mode::Rational;
    throw InputError("unknown mode '" + s + "' (expected float, wide or rational)");
}

std::string to_string(Mode m)
{
    switch (m) {
    case Mode::Float: return "float";
    case Mode::Wide: return "wide";
    case Mode::Rational: return "rational";
    }
    return "float";
}

std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
    if (!out) throw InputError("write to '" + path + "' failed");
}

Json parse_json(const std::string& text, const std::string& origin)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(origin + ": malformed JSON: " + e.what());
    }
}

template <class K>
K parse_scalar(const Json& v, const std::string& where)
{
    if (v.is_string()) return parse_text_scalar<K>(v.get<std::string>(), where);
    if constexpr (std::is_same_v<K, double>) {
        if (v.is_number()) return v.get<double>();
    }
    if (v.is_number_integer()) {
        const std::string digits = v.is_number_unsigned() ? std::to_string(v.get<unsigned long long>())
                                                          : std::to_string(v.get<long long>());
        return FieldTraits<K>::from_rational(Rational(mpz_class(digits)));
    }
    if (v.is_number_float()) {
        if constexpr (is_exact_v<K>) {
            throw InputError(where + ": decimal value " + v.dump() + " not allowed in rational mode; use \"p/q\"");
        } else {
            return K(v.get<double>());
        }
    }
    throw InputError(where + ": expected a number or a \"p/q\" string, got " + v.dump());
}

template <class K>
MomentSequence<K> moments_from_json(const Json& doc, const std::string& origin)
{
    const Json& arr = require_array(doc, "moments", origin);
    std::string label = origin;
    if (doc.contains("label")) {
        if (!doc["label"].is_string()) throw InputError(origin + ": \"label\" must be a string");
        label = doc["label"].get<std::string>();
    }
    if (doc.contains("mode")) {
        const Json& mode = doc["mode"];
        if (!mode.is_string() || (mode != "float" && mode != "rational")) {
            throw InputError(origin + ": \"mode\" must be \"float\" or \"rational\"");
        }
    }
    if (arr.empty()) throw InputError(origin + ": empty moment list");
    return MomentSequence<K>(parse_array<K>(arr, origin + ": moments"), label);
}

template <class K>
MomentSequence<K> load_moments(const std::string& source, std::size_t count)
{
    if (is_builtin(source)) {
        const BuiltinSpec b = parse_builtin(source);
        FamilySpec<K> spec;
        spec.family = b.family;
        spec.count = count;
        if (b.family == Family::QHermite) spec.q = parse_text_scalar<K>(b.param, "q");
        return make_moments(spec);
    }
    return moments_from_json<K>(parse_json(read_text(source), source), source);
}

template <class K>
RecurrenceCoefficients<K> recurrence_from_json(const Json& doc, const std::string& origin)
{
    const Json& a2 = require_array(doc, "a2", origin);
    const Json& b = require_array(doc, "b", origin);
    return RecurrenceCoefficients<K>(parse_array<K>(a2, origin + ": a2"), parse_array<K>(b, origin + ": b"));
}

template <class K>
RecurrenceCoefficients<K> load_recurrence(const std::string& source, std::size_t count)
{
    if (is_builtin(source)) return builtin_recurrence<K>(parse_builtin(source), count);
    return recurrence_from_json<K>(parse_json(read_text(source), source), source);
}

Json encode(double x)
{
    return Json(x == 0.0 ? 0.0 : x);
}

Json encode(const Wide& x)
{
    return Json(format_value(x));
}

Json encode(const Rational& x)
{
    return Json(x.get_str());
}

Json encode(const Surd& x)
{
    return Json(x.str());
}

template <class K>
Json encode_moments(const MomentSequence<K>& m)
{
    Json doc = Json::object();
    doc["label"] = m.label();
    doc["mode"] = is_exact_v<K> ? "rational" : "float";
    doc["moments"] = encode(m.values());
    return doc;
}

template <class K>
Json encode_recurrence(const RecurrenceCoefficients<K>& rec)
{
    Json doc = Json::object();
    doc["a2"] = encode(rec.a2_from_one());
    doc["b"] = encode(rec.b_values());
    return doc;
}

namespace {

std::string csv_scalar(const Json& v)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

void flatten(const Json& node, const std::string& key, std::vector<std::size_t>& idx, std::ostringstream& out)
{
    if (node.is_object()) {
        for (auto it = node.begin(); it != node.end(); ++it) {
            flatten(it.value(), key.empty() ? it.key() : key + "." + it.key(), idx, out);
        }
        return;
    }
    if (node.is_array()) {
        for (std::size_t i = 0; i < node.size(); ++i) {
            idx.push_back(i);
            flatten(node[i], key, idx, out);
            idx.pop_back();
        }
        return;
    }
    out << key << ',';
    if (!idx.empty()) out << idx[0];
    out << ',';
    for (std::size_t k = 1; k < idx.size(); ++k) {
        if (k > 1) out << ':';
        out << idx[k];
    }
    out << ',' << csv_scalar(node) << '\n';
}

}  // namespace

std::string to_csv(const Json& doc)
{
    std::ostringstream out;
    out << "key,i,j,value\n";
    std::vector<std::size_t> idx;
    flatten(doc, "", idx, out);
    return out.str();
}

#define ORTHOMAT_INSTANTIATE(K)                                                                  \
    template MomentSequence<K> moments_from_json<K>(const Json&, const std::string&);            \
    template MomentSequence<K> load_moments<K>(const std::string&, std::size_t);                 \
    template RecurrenceCoefficients<K> recurrence_from_json<K>(const Json&, const std::string&); \
    template RecurrenceCoefficients<K> load_recurrence<K>(const std::string&, std::size_t);      \
    template Json encode_moments(const MomentSequence<K>&);                                      \
    template Json encode_recurrence(const RecurrenceCoefficients<K>&);

template double parse_scalar<double>(const Json&, const std::string&);
template Wide parse_scalar<Wide>(const Json&, const std::string&);
template Rational parse_scalar<Rational>(const Json&, const std::string&);

ORTHOMAT_INSTANTIATE(double)
ORTHOMAT_INSTANTIATE(Wide)
ORTHOMAT_INSTANTIATE(Rational)

#undef ORTHOMAT_INSTANTIATE

}  // namespace orthomat::io

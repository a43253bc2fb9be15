#pragma once

// JSON/CSV persistence of moment files, recurrence files and result tables.
//
// Moment file:     {"label": "...", "mode": "float"|"rational", "moments": [1, "1/3", ...]}
// Recurrence file: {"a2": [a_1^2, a_2^2, ...], "b": [b_0, b_1, ...]}
//
// A source string "builtin:<family>[:<q>]" names a catalog family instead of a
// file; the q parameter applies to q-hermite only.

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "orthomat/coefficients.hpp"
#include "orthomat/matrix.hpp"
#include "orthomat/moments.hpp"
#include "orthomat/scalar.hpp"

namespace orthomat::io {

using Json = nlohmann::ordered_json;

enum class Mode { Float, Wide, Rational };

Mode parse_mode(const std::string& s);
std::string to_string(Mode m);

/// Whole file as text; InputError if unreadable.
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// Parses a JSON document, mapping syntax errors to InputError.
Json parse_json(const std::string& text, const std::string& origin);

/// A number or a "p/q" string. Rational mode rejects non-integer JSON numbers
/// and decimal strings.
template <class K>
K parse_scalar(const Json& v, const std::string& where);

template <class K>
MomentSequence<K> moments_from_json(const Json& doc, const std::string& origin);

/// File path or builtin spec. Builtin families produce `count` moments; files
/// are returned whole.
template <class K>
MomentSequence<K> load_moments(const std::string& source, std::size_t count);

template <class K>
RecurrenceCoefficients<K> recurrence_from_json(const Json& doc, const std::string& origin);

/// File path or builtin spec. Builtin families provide a_1^2..a_count^2 and
/// b_0..b_count.
template <class K>
RecurrenceCoefficients<K> load_recurrence(const std::string& source, std::size_t count);

/// Rationals as "p/q" strings, surds as "c*sqrt(r)", doubles as shortest
/// round-trip numbers, wide floats as decimal strings at full precision.
Json encode(double x);
Json encode(const Wide& x);
Json encode(const Rational& x);
Json encode(const Surd& x);

template <class T>
Json encode(const std::vector<T>& v)
{
    Json out = Json::array();
    for (const auto& x : v) out.push_back(encode(x));
    return out;
}

/// Rows 0..n, row i holding entries (i,0)..(i,i).
template <class T>
Json encode(const TriangularTable<T>& t)
{
    Json out = Json::array();
    for (std::size_t i = 0; i <= t.order(); ++i) out.push_back(encode(t.row(i)));
    return out;
}

template <class T>
Json encode(const Matrix<T>& m)
{
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(encode(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

/// Moment file document; parses back through moments_from_json.
template <class K>
Json encode_moments(const MomentSequence<K>& m);

/// Recurrence file document; parses back through recurrence_from_json.
template <class K>
Json encode_recurrence(const RecurrenceCoefficients<K>& rec);

/// Flattens a document to "key,i,j,value" lines. Nested object keys are joined
/// with '.', the first two array indices fill i and j, deeper ones are appended
/// to j with ':'.
std::string to_csv(const Json& doc);

}  // namespace orthomat::io

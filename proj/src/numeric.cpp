#include "stairtile/numeric.hpp"

#include "stairtile/error.hpp"

#include <cctype>

namespace stairtile {

std::string rat_to_string(const Rat& r) {
    Int num = numerator(r);
    Int den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string rat_to_decimal(const Rat& r, unsigned digits) {
    Int num = numerator(r);
    Int den = denominator(r);
    bool neg = num < 0;
    if (neg) num = -num;
    Int scaled = num * ipow(10, digits);
    Int q = scaled / den;
    Int rem = scaled % den;
    if (rem * 2 >= den) ++q; // round half away from zero
    std::string s = q.str();
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    if (digits > 0) s.insert(s.size() - digits, ".");
    return (neg && q != 0) ? "-" + s : s;
}

double rat_to_double(const Rat& r) { return static_cast<double>(r); }

Rat parse_rational(const std::string& text) {
    auto bad = [&]() -> Rat {
        fail(ErrorKind::BadParameters, "cannot parse rational '" + text + "'");
    };
    std::string s = text;
    if (s.empty()) return bad();

    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            Int p(s.substr(0, slash));
            Int q(s.substr(slash + 1));
            if (q == 0) return bad();
            return Rat(p, q);
        }
        auto dot = s.find('.');
        if (dot == std::string::npos) return Rat(Int(s));
        std::string head = s.substr(0, dot);
        std::string frac = s.substr(dot + 1);
        if (frac.empty()) return bad();
        for (char c : frac)
            if (!std::isdigit(static_cast<unsigned char>(c))) return bad();
        bool neg = !head.empty() && head[0] == '-';
        if (!head.empty() && (head[0] == '+' || head[0] == '-')) head = head.substr(1);
        Int whole = head.empty() ? Int(0) : Int(head);
        Int scale = ipow(10, static_cast<unsigned>(frac.size()));
        Rat value = Rat(whole * scale + Int(frac), scale);
        return neg ? -value : value;
    } catch (const std::runtime_error&) {
        return bad();
    }
}

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::BadParameters: return "BadParameters";
        case ErrorKind::NonCubeAligned: return "NonCubeAligned";
        case ErrorKind::EmptyUnion: return "EmptyUnion";
        case ErrorKind::UnknownRule: return "UnknownRule";
        case ErrorKind::NotASuffix: return "NotASuffix";
        case ErrorKind::GammaOutOfRange: return "GammaOutOfRange";
        case ErrorKind::NotPrimitive: return "NotPrimitive";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::WordTooLong: return "WordTooLong";
        case ErrorKind::ConfigParse: return "ConfigParse";
        case ErrorKind::ScenarioUnknown: return "ScenarioUnknown";
        case ErrorKind::AssertionFailed: return "AssertionFailed";
        case ErrorKind::IoFailure: return "IoFailure";
    }
    return "Error";
}

} // namespace stairtile

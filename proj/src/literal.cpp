#include "padyn/literal.hpp"

#include <charconv>
#include <vector>

namespace padyn {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

mpz_class parse_integer(std::string_view s) {
    s = trim(s);
    std::string_view body = s;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
    if (body.empty()) throw ParseError("empty integer in literal");
    for (char c : body)
        if (c < '0' || c > '9') throw ParseError("bad integer '" + std::string(s) + "'");
    std::string str(s.front() == '+' ? s.substr(1) : s);
    return mpz_class(str, 10);
}

long parse_small(std::string_view s) {
    s = trim(s);
    long value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("bad integer '" + std::string(s) + "'");
    return value;
}

} // namespace

PadicNumber parse_literal(const PrimeContext& ctx, std::string_view text) {
    text = trim(text);
    if (text.empty()) throw ParseError("empty p-adic literal");

    if (auto semi = text.find(';'); semi != std::string_view::npos) {
        const long v = parse_small(text.substr(0, semi));
        std::vector<unsigned long> digits;
        std::string_view rest = text.substr(semi + 1);
        while (!rest.empty()) {
            auto comma = rest.find(',');
            const long d = parse_small(rest.substr(0, comma));
            if (d < 0) throw ParseError("negative digit in literal");
            digits.push_back(static_cast<unsigned long>(d));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        return PadicNumber::from_digits(ctx, static_cast<int>(v), digits);
    }

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        mpz_class den = parse_integer(text.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in literal");
        return PadicNumber::from_rational(ctx, parse_integer(text.substr(0, slash)), den);
    }
    return PadicNumber::from_integer(ctx, parse_integer(text));
}

std::string to_digit_literal(const PadicNumber& x) {
    if (x.is_zero()) return "0";
    auto digits = x.digits();
    while (digits.size() > 1 && digits.back() == 0) digits.pop_back();
    std::string out = std::to_string(x.valuation()) + ";";
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(digits[i]);
    }
    return out;
}

nlohmann::json to_json(const PadicNumber& x) {
    nlohmann::json j;
    j["p"] = x.prime();
    if (x.is_zero()) {
        j["valuation"] = nullptr;
        j["digits"] = nlohmann::json::array();
    } else {
        j["valuation"] = x.valuation();
        j["digits"] = x.digits();
    }
    return j;
}

PadicNumber padic_from_json(const PrimeContext& ctx, const nlohmann::json& j) {
    if (j.is_string()) return parse_literal(ctx, j.get<std::string>());
    if (j.is_number_integer()) return PadicNumber::from_integer(ctx, j.get<long>());
    if (!j.is_object()) throw ParseError("p-adic JSON must be an object, string or integer");
    if (j.contains("p") && j.at("p").get<unsigned long>() != ctx.prime())
        throw ParseError("p-adic JSON prime does not match the context");
    if (j.at("valuation").is_null()) return PadicNumber(ctx);
    return PadicNumber::from_digits(ctx, j.at("valuation").get<int>(),
                                    j.at("digits").get<std::vector<unsigned long>>());
}

} // namespace padyn

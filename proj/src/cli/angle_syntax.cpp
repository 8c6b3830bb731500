#include <charconv>
#include <cmath>

#include "hepbell/cli.hpp"

namespace hepbell::cli {

namespace {

bool parse_number(std::string_view s, double& out) {
    if (s.empty()) return false;
    if (s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

double parse_angle(std::string_view token) {
    const std::string original(token);
    std::string_view s = trim(token);
    if (s.empty()) throw AngleSyntaxError(original);

    const auto pi_pos = s.find("pi");
    if (pi_pos == std::string_view::npos) {
        double v = 0.0;
        if (!parse_number(s, v)) throw AngleSyntaxError(original);
        return v;
    }

    double sign = 1.0;
    std::string_view coef = s.substr(0, pi_pos);
    if (!coef.empty() && (coef.front() == '-' || coef.front() == '+')) {
        if (coef.front() == '-') sign = -1.0;
        coef.remove_prefix(1);
    }
    if (!coef.empty() && coef.back() == '*') {
        coef.remove_suffix(1);
        if (coef.empty()) throw AngleSyntaxError(original);
    }
    double numerator = 1.0;
    if (!coef.empty() && (coef.front() == '-' || !parse_number(coef, numerator))) throw AngleSyntaxError(original);

    std::string_view rest = s.substr(pi_pos + 2);
    double denominator = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') throw AngleSyntaxError(original);
        rest.remove_prefix(1);
        if (rest.empty() || rest.front() == '-' || !parse_number(rest, denominator) || denominator == 0.0)
            throw AngleSyntaxError(original);
    }
    return sign * numerator * kPi / denominator;
}

std::vector<double> parse_angle_list(std::string_view text) {
    std::vector<double> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse_angle(text.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    return out;
}

}  // namespace hepbell::cli

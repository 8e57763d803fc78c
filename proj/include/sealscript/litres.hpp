#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sealscript {

/// Exact decimal volume in liters, stored as an integer count of microliters.
/// Volumes are only ever scaled by integer counts and summed, so no rounding occurs.
class Litres {
public:
    static constexpr std::int64_t kScale = 1'000'000;
    static constexpr int kDigits = 6;

    constexpr Litres() = default;

    static constexpr Litres from_micro(std::int64_t micro) {
        Litres l;
        l.micro_ = micro;
        return l;
    }

    static constexpr Litres whole(std::int64_t litres) { return from_micro(litres * kScale); }

    /// Parses `123`, `40.5`, `0.000001`. Throws std::invalid_argument on anything else,
    /// including more than six fractional digits.
    static Litres parse(std::string_view text) {
        auto fail = [&] { return std::invalid_argument("not a decimal volume: '" + std::string(text) + "'"); };
        if (text.empty()) throw fail();
        const auto dot = text.find('.');
        std::string_view int_part = text.substr(0, dot);
        std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
        if (int_part.empty() || (dot != std::string_view::npos && frac_part.empty())) throw fail();
        if (frac_part.size() > static_cast<std::size_t>(kDigits)) throw fail();
        for (char c : int_part)
            if (c < '0' || c > '9') throw fail();
        for (char c : frac_part)
            if (c < '0' || c > '9') throw fail();

        std::int64_t whole_part = 0;
        auto [p, ec] = std::from_chars(int_part.data(), int_part.data() + int_part.size(), whole_part);
        if (ec != std::errc{} || p != int_part.data() + int_part.size() || whole_part > INT64_MAX / kScale)
            throw fail();
        std::int64_t frac = 0;
        for (std::size_t i = 0; i < static_cast<std::size_t>(kDigits); ++i)
            frac = frac * 10 + (i < frac_part.size() ? frac_part[i] - '0' : 0);
        return from_micro(whole_part * kScale + frac);
    }

    constexpr std::int64_t micro() const { return micro_; }
    constexpr double value() const { return static_cast<double>(micro_) / kScale; }
    constexpr bool positive() const { return micro_ > 0; }

    /// Shortest exact decimal rendering: `160`, `40.5`.
    std::string to_string() const {
        const bool neg = micro_ < 0;
        const std::uint64_t mag = neg ? static_cast<std::uint64_t>(-(micro_ + 1)) + 1 : static_cast<std::uint64_t>(micro_);
        std::string out = (neg ? "-" : "") + std::to_string(mag / kScale);
        std::uint64_t frac = mag % kScale;
        if (frac != 0) {
            std::string digits = std::to_string(frac);
            digits.insert(0, static_cast<std::size_t>(kDigits) - digits.size(), '0');
            while (digits.back() == '0') digits.pop_back();
            out += "." + digits;
        }
        return out;
    }

    friend constexpr Litres operator+(Litres a, Litres b) { return from_micro(a.micro_ + b.micro_); }
    constexpr Litres& operator+=(Litres other) {
        micro_ += other.micro_;
        return *this;
    }
    friend constexpr Litres operator*(Litres a, std::int64_t k) { return from_micro(a.micro_ * k); }
    friend constexpr Litres operator*(std::int64_t k, Litres a) { return a * k; }
    friend constexpr auto operator<=>(Litres, Litres) = default;

private:
    std::int64_t micro_ = 0;
};

}  // namespace sealscript

#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qseries {

// Arbitrary-precision signed integer. Sign-magnitude with little-endian
// base-2^32 limbs; zero is the empty limb vector with negative == false.
class BigInt {
public:
    BigInt() = default;

    BigInt(std::int64_t v) {
        if (v == 0) return;
        negative_ = v < 0;
        std::uint64_t m = negative_ ? ~static_cast<std::uint64_t>(v) + 1
                                    : static_cast<std::uint64_t>(v);
        limbs_.push_back(static_cast<std::uint32_t>(m));
        if (m >> 32) limbs_.push_back(static_cast<std::uint32_t>(m >> 32));
    }

    static BigInt from_uint64(std::uint64_t m) {
        BigInt r;
        if (m) {
            r.limbs_.push_back(static_cast<std::uint32_t>(m));
            if (m >> 32) r.limbs_.push_back(static_cast<std::uint32_t>(m >> 32));
        }
        return r;
    }

    // Decimal string, optional leading '+'/'-'.
    static BigInt from_string(std::string_view s) {
        bool neg = false;
        if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
            neg = s.front() == '-';
            s.remove_prefix(1);
        }
        if (s.empty())
            throw std::invalid_argument("BigInt: empty digit string");
        BigInt r;
        std::size_t i = 0;
        while (i < s.size()) {
            std::size_t chunk = std::min<std::size_t>(9, s.size() - i);
            std::uint32_t val = 0, scale = 1;
            for (std::size_t j = 0; j < chunk; ++j) {
                char c = s[i + j];
                if (c < '0' || c > '9')
                    throw std::invalid_argument("BigInt: invalid digit in \"" +
                                                std::string(s) + "\"");
                val = val * 10 + static_cast<std::uint32_t>(c - '0');
                scale *= 10;
            }
            mul_add_small(r.limbs_, scale, val);
            i += chunk;
        }
        r.negative_ = neg && !r.limbs_.empty();
        return r;
    }

    bool is_zero() const { return limbs_.empty(); }
    bool is_negative() const { return negative_; }
    int sign() const { return is_zero() ? 0 : (negative_ ? -1 : 1); }

    bool is_even() const { return limbs_.empty() || (limbs_[0] & 1u) == 0; }

    BigInt abs() const {
        BigInt r = *this;
        r.negative_ = false;
        return r;
    }

    BigInt operator-() const {
        BigInt r = *this;
        if (!r.is_zero()) r.negative_ = !r.negative_;
        return r;
    }

    friend BigInt operator+(const BigInt& a, const BigInt& b) {
        BigInt r;
        if (a.negative_ == b.negative_) {
            r.limbs_ = add_mag(a.limbs_, b.limbs_);
            r.negative_ = a.negative_ && !r.limbs_.empty();
        } else {
            int c = cmp_mag(a.limbs_, b.limbs_);
            if (c == 0) return r;
            if (c > 0) {
                r.limbs_ = sub_mag(a.limbs_, b.limbs_);
                r.negative_ = a.negative_;
            } else {
                r.limbs_ = sub_mag(b.limbs_, a.limbs_);
                r.negative_ = b.negative_;
            }
        }
        return r;
    }

    friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

    friend BigInt operator*(const BigInt& a, const BigInt& b) {
        BigInt r;
        if (a.is_zero() || b.is_zero()) return r;
        r.limbs_ = mul_mag(a.limbs_, b.limbs_);
        r.negative_ = a.negative_ != b.negative_;
        return r;
    }

    // Truncated division: quotient rounds toward zero, remainder takes the
    // dividend's sign, a == q*b + r with |r| < |b|.
    static std::pair<BigInt, BigInt> divmod(const BigInt& a, const BigInt& b) {
        if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
        BigInt q, r;
        auto [qm, rm] = divmod_mag(a.limbs_, b.limbs_);
        q.limbs_ = std::move(qm);
        r.limbs_ = std::move(rm);
        q.negative_ = (a.negative_ != b.negative_) && !q.limbs_.empty();
        r.negative_ = a.negative_ && !r.limbs_.empty();
        return {std::move(q), std::move(r)};
    }

    friend BigInt operator/(const BigInt& a, const BigInt& b) {
        return divmod(a, b).first;
    }
    friend BigInt operator%(const BigInt& a, const BigInt& b) {
        return divmod(a, b).second;
    }

    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }
    BigInt& operator/=(const BigInt& o) { return *this = *this / o; }
    BigInt& operator%=(const BigInt& o) { return *this = *this % o; }

    friend bool operator==(const BigInt& a, const BigInt& b) {
        return a.negative_ == b.negative_ && a.limbs_ == b.limbs_;
    }

    friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
        if (a.negative_ != b.negative_)
            return a.negative_ ? std::strong_ordering::less
                               : std::strong_ordering::greater;
        int c = cmp_mag(a.limbs_, b.limbs_);
        if (a.negative_) c = -c;
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    static BigInt gcd(BigInt a, BigInt b) {
        a.negative_ = false;
        b.negative_ = false;
        if (a.fits_uint64() && b.fits_uint64()) {
            std::uint64_t x = a.to_uint64(), y = b.to_uint64();
            while (y) {
                std::uint64_t t = x % y;
                x = y;
                y = t;
            }
            return from_uint64(x);
        }
        while (!b.is_zero()) {
            BigInt t = a % b;
            a = std::move(b);
            b = std::move(t);
        }
        return a;
    }

    static BigInt pow(const BigInt& base, unsigned e) {
        BigInt r(1), b = base;
        while (e) {
            if (e & 1u) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    bool fits_uint64() const { return !negative_ && limbs_.size() <= 2; }

    std::uint64_t to_uint64() const {
        if (!fits_uint64()) throw std::overflow_error("BigInt: does not fit uint64");
        std::uint64_t v = 0;
        if (limbs_.size() > 1) v = static_cast<std::uint64_t>(limbs_[1]) << 32;
        if (!limbs_.empty()) v |= limbs_[0];
        return v;
    }

    bool fits_int64() const {
        if (limbs_.size() > 2) return false;
        std::uint64_t v = 0;
        if (limbs_.size() > 1) v = static_cast<std::uint64_t>(limbs_[1]) << 32;
        if (!limbs_.empty()) v |= limbs_[0];
        return negative_ ? v <= static_cast<std::uint64_t>(1) << 63
                         : v < static_cast<std::uint64_t>(1) << 63;
    }

    std::int64_t to_int64() const {
        if (!fits_int64()) throw std::overflow_error("BigInt: does not fit int64");
        std::uint64_t v = 0;
        if (limbs_.size() > 1) v = static_cast<std::uint64_t>(limbs_[1]) << 32;
        if (!limbs_.empty()) v |= limbs_[0];
        return negative_ ? -static_cast<std::int64_t>(v - 1) - 1
                         : static_cast<std::int64_t>(v);
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::vector<std::uint32_t> m = limbs_;
        std::string digits;
        while (!m.empty()) {
            std::uint32_t rem = divmod_small(m, 1'000'000'000u);
            for (int i = 0; i < 9; ++i) {
                digits.push_back(static_cast<char>('0' + rem % 10));
                rem /= 10;
            }
        }
        while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
        if (negative_) digits.push_back('-');
        std::reverse(digits.begin(), digits.end());
        return digits;
    }

    friend std::ostream& operator<<(std::ostream& os, const BigInt& v) {
        return os << v.to_string();
    }

private:
    using Limbs = std::vector<std::uint32_t>;

    bool negative_ = false;
    Limbs limbs_;

    static void trim(Limbs& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    }

    static int cmp_mag(const Limbs& a, const Limbs& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static Limbs add_mag(const Limbs& a, const Limbs& b) {
        const Limbs& lo = a.size() < b.size() ? a : b;
        const Limbs& hi = a.size() < b.size() ? b : a;
        Limbs r(hi.size() + 1, 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < hi.size(); ++i) {
            std::uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0);
            r[i] = static_cast<std::uint32_t>(s);
            carry = s >> 32;
        }
        r[hi.size()] = static_cast<std::uint32_t>(carry);
        trim(r);
        return r;
    }

    // Requires |a| >= |b|.
    static Limbs sub_mag(const Limbs& a, const Limbs& b) {
        Limbs r(a.size(), 0);
        std::uint64_t borrow = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::uint64_t s = static_cast<std::uint64_t>(a[i]) -
                              (i < b.size() ? b[i] : 0) - borrow;
            r[i] = static_cast<std::uint32_t>(s);
            borrow = (s >> 63) & 1;
        }
        trim(r);
        return r;
    }

    static Limbs mul_mag(const Limbs& a, const Limbs& b) {
        Limbs r(a.size() + b.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j < b.size(); ++j) {
                std::uint64_t cur = r[i + j] +
                                    static_cast<std::uint64_t>(a[i]) * b[j] + carry;
                r[i + j] = static_cast<std::uint32_t>(cur);
                carry = cur >> 32;
            }
            r[i + b.size()] = static_cast<std::uint32_t>(carry);
        }
        trim(r);
        return r;
    }

    // m = m * mul + add, in place.
    static void mul_add_small(Limbs& m, std::uint32_t mul, std::uint32_t add) {
        std::uint64_t carry = add;
        for (auto& limb : m) {
            std::uint64_t cur = static_cast<std::uint64_t>(limb) * mul + carry;
            limb = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        while (carry) {
            m.push_back(static_cast<std::uint32_t>(carry));
            carry >>= 32;
        }
    }

    // m /= d in place, returns remainder.
    static std::uint32_t divmod_small(Limbs& m, std::uint32_t d) {
        std::uint64_t rem = 0;
        for (std::size_t i = m.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | m[i];
            m[i] = static_cast<std::uint32_t>(cur / d);
            rem = cur % d;
        }
        trim(m);
        return static_cast<std::uint32_t>(rem);
    }

    static Limbs shl_bits(const Limbs& a, unsigned s, std::size_t extra) {
        Limbs r(a.size() + extra, 0);
        if (s == 0) {
            std::copy(a.begin(), a.end(), r.begin());
            return r;
        }
        std::uint32_t carry = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            r[i] = (a[i] << s) | carry;
            carry = static_cast<std::uint32_t>(a[i] >> (32 - s));
        }
        if (a.size() < r.size()) r[a.size()] = carry;
        return r;
    }

    static Limbs shr_bits(const Limbs& a, unsigned s) {
        Limbs r(a.size(), 0);
        if (s == 0) {
            r = a;
        } else {
            std::uint32_t carry = 0;
            for (std::size_t i = a.size(); i-- > 0;) {
                r[i] = (a[i] >> s) | carry;
                carry = static_cast<std::uint32_t>(a[i] << (32 - s));
            }
        }
        trim(r);
        return r;
    }

    // Knuth algorithm D on magnitudes.
    static std::pair<Limbs, Limbs> divmod_mag(const Limbs& u, const Limbs& v) {
        if (cmp_mag(u, v) < 0) return {Limbs{}, u};
        if (v.size() == 1) {
            Limbs q = u;
            std::uint32_t rem = divmod_small(q, v[0]);
            Limbs r;
            if (rem) r.push_back(rem);
            return {std::move(q), std::move(r)};
        }
        const std::size_t n = v.size();
        const std::size_t m = u.size() - n;
        const unsigned s = std::countl_zero(v.back());
        Limbs vn = shl_bits(v, s, 0);
        Limbs un = shl_bits(u, s, 1);
        Limbs q(m + 1, 0);
        for (std::size_t j = m + 1; j-- > 0;) {
            std::uint64_t num = (static_cast<std::uint64_t>(un[j + n]) << 32) |
                                un[j + n - 1];
            std::uint64_t qhat = num / vn[n - 1];
            std::uint64_t rhat = num % vn[n - 1];
            while (qhat >= (1ull << 32) ||
                   qhat * vn[n - 2] > ((rhat << 32) | un[j + n - 2])) {
                --qhat;
                rhat += vn[n - 1];
                if (rhat >= (1ull << 32)) break;
            }
            std::uint64_t borrow = 0, carry = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t p = qhat * vn[i] + carry;
                carry = p >> 32;
                std::uint64_t t = static_cast<std::uint64_t>(un[j + i]) -
                                  static_cast<std::uint32_t>(p) - borrow;
                un[j + i] = static_cast<std::uint32_t>(t);
                borrow = (t >> 63) & 1;
            }
            std::uint64_t t = static_cast<std::uint64_t>(un[j + n]) - carry - borrow;
            un[j + n] = static_cast<std::uint32_t>(t);
            if ((t >> 63) & 1) {
                --qhat;
                std::uint64_t c = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    std::uint64_t sum = static_cast<std::uint64_t>(un[j + i]) + vn[i] + c;
                    un[j + i] = static_cast<std::uint32_t>(sum);
                    c = sum >> 32;
                }
                un[j + n] = static_cast<std::uint32_t>(un[j + n] + c);
            }
            q[j] = static_cast<std::uint32_t>(qhat);
        }
        trim(q);
        un.resize(n);
        return {std::move(q), shr_bits(un, s)};
    }
};

}  // namespace qseries

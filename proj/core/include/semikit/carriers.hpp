#pragma once

#include "semikit/order.hpp"
#include "semikit/semiring.hpp"

namespace semikit {

/* Carrier adapters for the generic derivation transcripts. */

struct SemiringCarrier {
    const FiniteSemiring* s;
    using Value = uint32_t;
    Value add(const Value& a, const Value& b) const { return s->add(a, b); }
    Value mul(const Value& a, const Value& b) const { return s->mul(a, b); }
    bool eq(const Value& a, const Value& b) const { return a == b; }
    Value zero() const { return s->zero(); }
};

struct OrderCarrier {
    const RealOrder* o;
    using Value = OrderElement;
    Value add(const Value& a, const Value& b) const { return o->add(a, b); }
    Value mul(const Value& a, const Value& b) const { return o->mul(a, b); }
    bool eq(const Value& a, const Value& b) const { return a == b; }
    Value zero() const { return o->zero(); }
};

}  // namespace semikit

// Domain types: links, paths, application classes, code parameters.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtl/rational.hpp"

namespace rtl {

/// Physical link architectures, classified by photon propagation pattern.
/// SenderReceiver sends left to right, ReceiverSender right to left;
/// MeetInTheMiddle fires from both ends toward a midpoint analyzer;
/// MidpointSource fires an entangled pair outward from the link center.
/// The two polarized variants are mirror images of each other.
enum class LinkKind {
    SenderReceiver,
    ReceiverSender,
    MeetInTheMiddle,
    MidpointSource,
};

inline const char* to_string(LinkKind k) {
    switch (k) {
    case LinkKind::SenderReceiver: return "MM>";
    case LinkKind::ReceiverSender: return "MM<";
    case LinkKind::MeetInTheMiddle: return "MIM";
    case LinkKind::MidpointSource: return "MSM";
    }
    return "?";
}

/// Application consumption patterns. B measures immediately and
/// post-selects; C waits for reception confirmation but defers Pauli
/// frames; T waits for both.
enum class AppClass { B, C, T };

inline const char* to_string(AppClass c) {
    switch (c) {
    case AppClass::B: return "B";
    case AppClass::C: return "C";
    case AppClass::T: return "T";
    }
    return "?";
}

template <typename T>
struct PerClass {
    T b{};
    T c{};
    T t{};

    T& operator[](AppClass cls) {
        switch (cls) {
        case AppClass::B: return b;
        case AppClass::C: return c;
        default: return t;
        }
    }
    const T& operator[](AppClass cls) const {
        return const_cast<PerClass*>(this)->operator[](cls);
    }

    friend bool operator==(const PerClass& x, const PerClass& y) {
        return x.b == y.b && x.c == y.c && x.t == y.t;
    }
};

struct Link {
    LinkKind kind = LinkKind::SenderReceiver;
    Rational latency = 1;            // one-way propagation time, > 0
    double reception_prob = 1.0;     // per-trial success probability, in (0,1]
    std::int64_t transmitters = 1;   // transmitter qubits available per burst

    void validate() const {
        if (!(latency > Rational(0))) throw std::invalid_argument("link latency must be positive");
        if (!(reception_prob > 0.0) || reception_prob > 1.0)
            throw std::invalid_argument("link reception probability must be in (0,1]");
        if (transmitters < 1) throw std::invalid_argument("link transmitter count must be >= 1");
    }
};

/// A chain of links. Link j (1-based) connects node j-1 to node j; node 0
/// is the source end, node h the destination.
struct Path {
    std::vector<Link> links;

    std::size_t hops() const { return links.size(); }

    void validate() const {
        if (links.empty()) throw std::invalid_argument("path must have at least one link");
        for (const Link& l : links) l.validate();
    }
};

inline Rational end_to_end_latency(const Path& path) {
    Rational sum = 0;
    for (const Link& l : path.links) sum += l.latency;
    return sum;
}

/// Signed latency: positive when the photon co-propagates with the
/// source-to-destination direction, negative when it counter-propagates,
/// zero for the symmetric architectures.
inline Rational polarity(const Link& link) {
    switch (link.kind) {
    case LinkKind::SenderReceiver: return link.latency;
    case LinkKind::ReceiverSender: return -link.latency;
    default: return Rational(0);
    }
}

inline Rational polarity_sum(const Path& path) {
    Rational sum = 0;
    for (const Link& l : path.links) sum += polarity(l);
    return sum;
}

/// Reverses the path and swaps the polarized link variants so that the
/// result describes the same hardware traversed right to left.
inline Path mirror(const Path& path) {
    Path out;
    out.links.reserve(path.links.size());
    for (auto it = path.links.rbegin(); it != path.links.rend(); ++it) {
        Link l = *it;
        if (l.kind == LinkKind::SenderReceiver)
            l.kind = LinkKind::ReceiverSender;
        else if (l.kind == LinkKind::ReceiverSender)
            l.kind = LinkKind::SenderReceiver;
        out.links.push_back(l);
    }
    return out;
}

/// Block parameters of an [[n,k,d]] code. Only the block size n enters the
/// probability analysis; k and d are carried for identification.
struct CodeParams {
    int n = 1;
    int k = 1;
    int d = 1;

    void validate() const {
        if (n < 1 || k < 1 || k > n || d < 1 || d > n)
            throw std::invalid_argument("code parameters must satisfy 1 <= k,d <= n");
    }

    /// Smallest count that is more than half the block: floor(n/2)+1.
    int majority_threshold() const { return n / 2 + 1; }

    std::string str() const {
        return "[[" + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(d) + "]]";
    }

    static CodeParams steane() { return {7, 1, 3}; }
    static CodeParams golay() { return {23, 1, 7}; }
};

} // namespace rtl

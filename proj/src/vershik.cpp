#include "adic/vershik.hpp"

#include <cstdlib>

namespace adic {

namespace {

std::vector<Vertex> checked_sources(const Diagram& d, const PathRep& p)
{
    try {
        return source_chain(d, p);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::LabelOutOfRange) {
            throw Error(ErrorCode::InconsistentPath, e.what());
        }
        throw;
    }
}

}  // namespace

PathRep minimal_path(const Diagram& d)
{
    if (!analyze(d).focused) {
        throw Error(ErrorCode::NotFocused, "minimal edges do not share a range");
    }
    return PathRep{{}, Tail::Min};
}

PathRep maximal_path(const Diagram& d)
{
    if (!d.has_chain(Tail::Max)) {
        throw Error(ErrorCode::NotProperlyOrdered, "the maximal path is not unique");
    }
    return PathRep{{}, Tail::Max};
}

PathRep successor(const Diagram& d, const PathRep& p, int extensionBound)
{
    auto sources = checked_sources(d, p);
    PathRep out = p;
    int k = 0;
    for (int level = 1; level <= p.depth(); ++level) {
        if (p.labels[level - 1] < d.max_label(level, sources[level - 1])) {
            k = level;
            break;
        }
    }
    if (k == 0) {
        if (p.tail == Tail::Max) {
            if (!d.has_chain(Tail::Min)) {
                throw Error(ErrorCode::MinTailUndefined, "no unique minimal path to wrap to");
            }
            return PathRep{{}, Tail::Min};
        }
        for (int level = p.depth() + 1; level <= p.depth() + extensionBound; ++level) {
            if (d.max_label(level, d.chain_vertex(Tail::Min, level)) >= 1) {
                k = level;
                break;
            }
        }
        if (k == 0) {
            throw Error(ErrorCode::ExtensionBoundExceeded, "no non-maximal edge above the prefix");
        }
        out = extend_to(d, out, k);
    }
    out.labels[k - 1] += 1;
    for (int level = 1; level < k; ++level) {
        out.labels[level - 1] = 0;
    }
    return out;
}

PathRep predecessor(const Diagram& d, const PathRep& p, int extensionBound)
{
    checked_sources(d, p);
    PathRep out = p;
    int k = 0;
    for (int level = 1; level <= p.depth(); ++level) {
        if (p.labels[level - 1] > 0) {
            k = level;
            break;
        }
    }
    if (k == 0) {
        if (p.tail == Tail::Min) {
            if (!d.has_chain(Tail::Max)) {
                throw Error(ErrorCode::MaxTailUndefined, "no unique maximal path to wrap to");
            }
            return PathRep{{}, Tail::Max};
        }
        for (int level = p.depth() + 1; level <= p.depth() + extensionBound; ++level) {
            if (d.chain_label(Tail::Max, level) >= 1) {
                k = level;
                break;
            }
        }
        if (k == 0) {
            throw Error(ErrorCode::ExtensionBoundExceeded, "no non-minimal edge above the prefix");
        }
        out = extend_to(d, out, k);
    }
    out.labels[k - 1] -= 1;
    // Below k, follow maximal edges from the new range.
    const auto sources = source_chain(d, out);
    Vertex a = sources[k - 1];
    for (int level = k; level > 1; --level) {
        a = d.range(level, a, out.labels[level - 1]);
        out.labels[level - 2] = d.max_label(level - 1, a);
    }
    return out;
}

Order compare(const Diagram& d, const PathRep& p, const PathRep& q)
{
    if (p.tail != q.tail) {
        return Order::Incomparable;
    }
    const int depth = std::max(p.depth(), q.depth());
    const PathRep a = extend_to(d, p, depth);
    const PathRep b = extend_to(d, q, depth);
    for (int level = depth; level >= 1; --level) {
        const int x = a.labels[level - 1];
        const int y = b.labels[level - 1];
        if (x != y) {
            return x < y ? Order::Less : Order::Greater;
        }
    }
    return Order::Equal;
}

OrbitLog orbit(const Diagram& d, const PathRep& p, long n, long maxSteps)
{
    if (std::labs(n) > maxSteps) {
        throw Error(ErrorCode::OrbitTooLong, "requested " + std::to_string(n) + " steps");
    }
    OrbitLog log;
    log.base = p;
    log.steps = n;
    log.entries.reserve(static_cast<std::size_t>(std::labs(n)) + 1);
    log.entries.push_back(p);
    for (long i = 0; i < std::labs(n); ++i) {
        log.entries.push_back(n > 0 ? successor(d, log.entries.back())
                                    : predecessor(d, log.entries.back()));
    }
    return log;
}

}  // namespace adic

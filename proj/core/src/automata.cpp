#include "semigrid/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

#include "semigrid/errors.hpp"

namespace semigrid {

// ---------------------------------------------------------------------------
// Alphabet

std::size_t Alphabet::size() const {
    std::size_t n = 1;
    for (const auto& t : tracks) n *= t.size();
    return n;
}

std::size_t Alphabet::index_of(const Symbol& s) const {
    if (s.size() != tracks.size()) throw AlphabetMismatch("symbol arity mismatch");
    std::size_t index = 0;
    for (std::size_t t = 0; t < tracks.size(); ++t) {
        const TrackAlphabet& ta = tracks[t];
        std::size_t digit_index;
        if (!s[t].has_value()) {
            if (!ta.with_pad) throw AlphabetMismatch("track has no padding symbol");
            digit_index = ta.size() - 1;
        } else {
            const std::int64_t v = *s[t];
            if (v < ta.lo || v > ta.hi)
                throw AlphabetMismatch("digit " + std::to_string(v) + " outside track range [" +
                                       std::to_string(ta.lo) + ".." + std::to_string(ta.hi) + "]");
            digit_index = static_cast<std::size_t>(v - ta.lo);
        }
        index = index * ta.size() + digit_index;
    }
    return index;
}

Alphabet::Symbol Alphabet::symbol_at(std::size_t index) const {
    Symbol s(tracks.size());
    for (std::size_t t = tracks.size(); t-- > 0;) {
        const TrackAlphabet& ta = tracks[t];
        const std::size_t digit_index = index % ta.size();
        index /= ta.size();
        if (ta.with_pad && digit_index == ta.size() - 1)
            s[t] = std::nullopt;
        else
            s[t] = ta.lo + static_cast<std::int64_t>(digit_index);
    }
    return s;
}

std::string Alphabet::format_symbol(const Symbol& s) const {
    std::ostringstream os;
    os << '(';
    for (std::size_t t = 0; t < s.size(); ++t) {
        if (t) os << ',';
        if (s[t].has_value())
            os << *s[t];
        else
            os << '#';
    }
    os << ')';
    return os.str();
}

// ---------------------------------------------------------------------------
// SyncDFA basics

std::int8_t SyncDFA::run(const std::vector<Alphabet::Symbol>& word) const {
    std::uint32_t s = initial;
    if (order == ReadOrder::MsbFirst) {
        for (const auto& sym : word) s = step(s, alphabet.index_of(sym));
    } else {
        for (auto it = word.rbegin(); it != word.rend(); ++it)
            s = step(s, alphabet.index_of(*it));
    }
    return labels[s];
}

std::string SyncDFA::label_name(std::int8_t label) const {
    if (kind == LabelKind::Acceptor) return label == kAccept ? "Accept" : "Reject";
    return to_string(static_cast<Sign>(label));
}

std::int8_t dfa_run(const SyncDFA& a, const ConvWord& word) { return a.run(word.symbols); }

// ---------------------------------------------------------------------------
// Convolution

ConvWord convolve(const std::vector<LaurentDigits>& tracks) {
    ConvWord w;
    bool any = false;
    int hi = 0, lo = 0;
    for (const auto& t : tracks) {
        if (t.is_zero()) continue;
        if (!any) {
            hi = t.hi();
            lo = t.lo();
            any = true;
        } else {
            hi = std::max(hi, t.hi());
            lo = std::min(lo, t.lo());
        }
    }
    if (!any) return w;
    w.top = hi;
    w.symbols.reserve(static_cast<std::size_t>(hi - lo) + 1);
    for (int k = hi; k >= lo; --k) {
        Alphabet::Symbol sym(tracks.size());
        for (std::size_t t = 0; t < tracks.size(); ++t) {
            const auto& track = tracks[t];
            if (!track.is_zero() && k <= track.hi() && k >= track.lo())
                sym[t] = to_int64_checked(track.at(k), "digit");
            else
                sym[t] = std::nullopt;
        }
        w.symbols.push_back(std::move(sym));
    }
    return w;
}

std::string format_conv_word(const ConvWord& w) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.symbols.size(); ++i) {
        const int k = w.top - static_cast<int>(i);
        if (k == -1) os << '.';
        os << '(';
        for (std::size_t t = 0; t < w.symbols[i].size(); ++t) {
            if (t) os << ',';
            if (w.symbols[i][t].has_value())
                os << *w.symbols[i][t];
            else
                os << '#';
        }
        os << ')';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// LazyDfa

std::int8_t LazyDfa::run(const std::vector<Alphabet::Symbol>& word) {
    std::size_t s = initial();
    for (const auto& sym : word) s = step(s, alphabet().index_of(sym));
    return label(s);
}

SyncDFA LazyDfa::materialize(std::size_t state_cap) {
    SyncDFA out;
    out.alphabet = alphabet();
    out.kind = label_kind();
    const std::size_t nsym = out.alphabet.size();

    std::unordered_map<std::size_t, std::uint32_t> dense;
    std::vector<std::size_t> handles;
    std::deque<std::size_t> queue;

    const std::size_t init = initial();
    dense.emplace(init, 0);
    handles.push_back(init);
    queue.push_back(init);
    out.initial = 0;

    while (!queue.empty()) {
        const std::size_t h = queue.front();
        queue.pop_front();
        for (std::size_t sym = 0; sym < nsym; ++sym) {
            const std::size_t t = step(h, sym);
            auto [it, inserted] = dense.emplace(t, static_cast<std::uint32_t>(handles.size()));
            if (inserted) {
                if (handles.size() >= state_cap)
                    throw StateExplosion("automaton exceeds the state cap", handles.size() + 1);
                handles.push_back(t);
                queue.push_back(t);
            }
            (void)it;
        }
    }

    out.labels.resize(handles.size());
    out.next.resize(handles.size() * nsym);
    for (std::size_t i = 0; i < handles.size(); ++i) {
        out.labels[i] = label(handles[i]);
        for (std::size_t sym = 0; sym < nsym; ++sym)
            out.next[i * nsym + sym] = dense.at(step(handles[i], sym));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Product, projection, determinization, minimization, equivalence

SyncDFA dfa_product(const SyncDFA& a, const SyncDFA& b,
                    const std::function<std::int8_t(std::int8_t, std::int8_t)>& combine,
                    SyncDFA::LabelKind kind) {
    if (!(a.alphabet == b.alphabet) || a.order != b.order)
        throw AlphabetMismatch("product requires identical alphabets and read order");
    const std::size_t nsym = a.alphabet.size();
    SyncDFA out;
    out.alphabet = a.alphabet;
    out.order = a.order;
    out.kind = kind;

    std::unordered_map<std::uint64_t, std::uint32_t> dense;
    std::vector<std::uint64_t> pairs;
    std::deque<std::uint64_t> queue;
    const auto key = [&](std::uint32_t x, std::uint32_t y) {
        return (static_cast<std::uint64_t>(x) << 32) | y;
    };
    const std::uint64_t init = key(a.initial, b.initial);
    dense.emplace(init, 0);
    pairs.push_back(init);
    queue.push_back(init);
    while (!queue.empty()) {
        const std::uint64_t p = queue.front();
        queue.pop_front();
        const auto sa = static_cast<std::uint32_t>(p >> 32);
        const auto sb = static_cast<std::uint32_t>(p & 0xffffffffu);
        for (std::size_t sym = 0; sym < nsym; ++sym) {
            const std::uint64_t t = key(a.step(sa, sym), b.step(sb, sym));
            auto [it, inserted] = dense.emplace(t, static_cast<std::uint32_t>(pairs.size()));
            (void)it;
            if (inserted) {
                pairs.push_back(t);
                queue.push_back(t);
            }
        }
    }
    out.labels.resize(pairs.size());
    out.next.resize(pairs.size() * nsym);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto sa = static_cast<std::uint32_t>(pairs[i] >> 32);
        const auto sb = static_cast<std::uint32_t>(pairs[i] & 0xffffffffu);
        out.labels[i] = combine(a.labels[sa], b.labels[sb]);
        for (std::size_t sym = 0; sym < nsym; ++sym)
            out.next[i * nsym + sym] =
                dense.at(key(a.step(sa, sym), b.step(sb, sym)));
    }
    return out;
}

SyncNFA project_track(const SyncDFA& a, std::size_t track) {
    if (a.kind != SyncDFA::LabelKind::Acceptor)
        throw AlphabetMismatch("projection is defined for acceptors");
    if (track >= a.alphabet.track_count()) throw AlphabetMismatch("no such track");

    SyncNFA n;
    n.order = a.order;
    for (std::size_t t = 0; t < a.alphabet.track_count(); ++t)
        if (t != track) n.alphabet.tracks.push_back(a.alphabet.tracks[t]);

    const std::size_t states = a.state_count();
    const std::size_t nsym = a.alphabet.size();
    n.accepting.assign(states, false);
    n.next.assign(states, std::vector<std::vector<std::uint32_t>>(n.alphabet.size()));

    // Symbols that are all-# on the kept tracks connect states where only the
    // removed track carries digits; initial/accepting sets close over them.
    std::vector<std::vector<std::uint32_t>> pad_fwd(states), pad_bwd(states);
    for (std::size_t sym = 0; sym < nsym; ++sym) {
        const Alphabet::Symbol full = a.alphabet.symbol_at(sym);
        Alphabet::Symbol kept;
        bool kept_all_pad = true;
        for (std::size_t t = 0; t < full.size(); ++t) {
            if (t == track) continue;
            kept.push_back(full[t]);
            if (full[t].has_value()) kept_all_pad = false;
        }
        const std::size_t ksym = n.alphabet.index_of(kept);
        for (std::size_t s = 0; s < states; ++s) {
            const std::uint32_t t = a.step(static_cast<std::uint32_t>(s), sym);
            n.next[s][ksym].push_back(t);
            if (kept_all_pad) {
                pad_fwd[s].push_back(t);
                pad_bwd[t].push_back(static_cast<std::uint32_t>(s));
            }
        }
    }
    for (auto& per_state : n.next)
        for (auto& targets : per_state) {
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        }

    const auto closure = [states](std::vector<std::uint32_t> seeds,
                                  const std::vector<std::vector<std::uint32_t>>& edges) {
        std::vector<bool> seen(states, false);
        std::deque<std::uint32_t> queue;
        for (auto s : seeds)
            if (!seen[s]) {
                seen[s] = true;
                queue.push_back(s);
            }
        while (!queue.empty()) {
            const std::uint32_t s = queue.front();
            queue.pop_front();
            for (auto t : edges[s])
                if (!seen[t]) {
                    seen[t] = true;
                    queue.push_back(t);
                }
        }
        return seen;
    };

    const std::vector<bool> init_set = closure({a.initial}, pad_fwd);
    std::vector<std::uint32_t> accept_seeds;
    for (std::size_t s = 0; s < states; ++s)
        if (a.labels[s] == SyncDFA::kAccept) accept_seeds.push_back(static_cast<std::uint32_t>(s));
    const std::vector<bool> acc_set = closure(accept_seeds, pad_bwd);

    for (std::size_t s = 0; s < states; ++s) {
        if (init_set[s]) n.initials.push_back(static_cast<std::uint32_t>(s));
        n.accepting[s] = acc_set[s];
    }
    return n;
}

SyncDFA determinize(const SyncNFA& n, std::size_t state_cap) {
    SyncDFA out;
    out.alphabet = n.alphabet;
    out.order = n.order;
    out.kind = SyncDFA::LabelKind::Acceptor;
    const std::size_t nsym = n.alphabet.size();

    std::map<std::vector<std::uint32_t>, std::uint32_t> dense;
    std::vector<std::vector<std::uint32_t>> subsets;
    std::deque<std::uint32_t> queue;

    std::vector<std::uint32_t> init = n.initials;
    std::sort(init.begin(), init.end());
    init.erase(std::unique(init.begin(), init.end()), init.end());
    dense.emplace(init, 0);
    subsets.push_back(init);
    queue.push_back(0);

    std::vector<std::vector<std::uint32_t>> trans;
    while (!queue.empty()) {
        const std::uint32_t id = queue.front();
        queue.pop_front();
        if (trans.size() <= id) trans.resize(id + 1);
        trans[id].assign(nsym, 0);
        const std::vector<std::uint32_t> subset = subsets[id];
        for (std::size_t sym = 0; sym < nsym; ++sym) {
            std::vector<std::uint32_t> target;
            for (auto s : subset) {
                const auto& ts = n.next[s][sym];
                target.insert(target.end(), ts.begin(), ts.end());
            }
            std::sort(target.begin(), target.end());
            target.erase(std::unique(target.begin(), target.end()), target.end());
            auto [it, inserted] = dense.emplace(target, static_cast<std::uint32_t>(subsets.size()));
            if (inserted) {
                if (subsets.size() >= state_cap)
                    throw StateExplosion("determinization exceeds the state cap",
                                         subsets.size() + 1);
                subsets.push_back(std::move(target));
                queue.push_back(it->second);
            }
            trans[id][sym] = it->second;
        }
    }

    out.labels.resize(subsets.size());
    out.next.resize(subsets.size() * nsym);
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        bool acc = false;
        for (auto s : subsets[i]) acc = acc || n.accepting[s];
        out.labels[i] = acc ? SyncDFA::kAccept : SyncDFA::kReject;
        for (std::size_t sym = 0; sym < nsym; ++sym) out.next[i * nsym + sym] = trans[i][sym];
    }
    return out;
}

namespace {

// Reachable part of a, renumbered in BFS order from the initial state.
SyncDFA reachable_part(const SyncDFA& a) {
    const std::size_t nsym = a.alphabet.size();
    std::vector<std::uint32_t> remap(a.state_count(), UINT32_MAX);
    std::vector<std::uint32_t> order;
    std::deque<std::uint32_t> queue;
    remap[a.initial] = 0;
    order.push_back(a.initial);
    queue.push_back(a.initial);
    while (!queue.empty()) {
        const std::uint32_t s = queue.front();
        queue.pop_front();
        for (std::size_t sym = 0; sym < nsym; ++sym) {
            const std::uint32_t t = a.step(s, sym);
            if (remap[t] == UINT32_MAX) {
                remap[t] = static_cast<std::uint32_t>(order.size());
                order.push_back(t);
                queue.push_back(t);
            }
        }
    }
    SyncDFA out;
    out.alphabet = a.alphabet;
    out.order = a.order;
    out.kind = a.kind;
    out.initial = 0;
    out.labels.resize(order.size());
    out.next.resize(order.size() * nsym);
    if (!a.state_names.empty()) out.state_names.resize(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        out.labels[i] = a.labels[order[i]];
        if (!a.state_names.empty()) out.state_names[i] = a.state_names[order[i]];
        for (std::size_t sym = 0; sym < nsym; ++sym)
            out.next[i * nsym + sym] = remap[a.step(order[i], sym)];
    }
    return out;
}

}  // namespace

SyncDFA dfa_minimize(const SyncDFA& input) {
    const SyncDFA a = reachable_part(input);
    const std::size_t nsym = a.alphabet.size();
    const std::size_t n = a.state_count();

    // Moore partition refinement starting from the label partition.
    std::vector<std::uint32_t> cls(n);
    {
        std::map<std::int8_t, std::uint32_t> by_label;
        for (std::size_t s = 0; s < n; ++s) {
            auto [it, inserted] =
                by_label.emplace(a.labels[s], static_cast<std::uint32_t>(by_label.size()));
            (void)inserted;
            cls[s] = it->second;
        }
    }
    while (true) {
        std::map<std::vector<std::uint32_t>, std::uint32_t> sig_to_class;
        std::vector<std::uint32_t> next_cls(n);
        for (std::size_t s = 0; s < n; ++s) {
            std::vector<std::uint32_t> sig;
            sig.reserve(nsym + 1);
            sig.push_back(cls[s]);
            for (std::size_t sym = 0; sym < nsym; ++sym) sig.push_back(cls[a.step(s, sym)]);
            auto [it, inserted] =
                sig_to_class.emplace(std::move(sig), static_cast<std::uint32_t>(sig_to_class.size()));
            (void)inserted;
            next_cls[s] = it->second;
        }
        bool changed = false;
        for (std::size_t s = 0; s < n; ++s) changed = changed || (next_cls[s] != cls[s]);
        const std::size_t count = sig_to_class.size();
        cls.swap(next_cls);
        if (!changed) {
            // Stable: build the quotient with classes numbered by first occurrence.
            std::vector<std::uint32_t> renumber(count, UINT32_MAX);
            std::uint32_t fresh = 0;
            for (std::size_t s = 0; s < n; ++s)
                if (renumber[cls[s]] == UINT32_MAX) renumber[cls[s]] = fresh++;
            SyncDFA out;
            out.alphabet = a.alphabet;
            out.order = a.order;
            out.kind = a.kind;
            out.initial = renumber[cls[a.initial]];
            out.labels.assign(fresh, 0);
            out.next.assign(fresh * nsym, 0);
            if (!a.state_names.empty()) out.state_names.assign(fresh, "");
            for (std::size_t s = 0; s < n; ++s) {
                const std::uint32_t c = renumber[cls[s]];
                out.labels[c] = a.labels[s];
                if (!a.state_names.empty() && out.state_names[c].empty())
                    out.state_names[c] = a.state_names[s];
                for (std::size_t sym = 0; sym < nsym; ++sym)
                    out.next[c * nsym + sym] = renumber[cls[a.step(s, sym)]];
            }
            return out;
        }
    }
}

std::optional<std::vector<Alphabet::Symbol>> dfa_equivalent(const SyncDFA& a, const SyncDFA& b) {
    if (!(a.alphabet == b.alphabet) || a.order != b.order || a.kind != b.kind)
        throw AlphabetMismatch("equivalence requires identical alphabets, order and label kind");
    const std::size_t nsym = a.alphabet.size();
    struct Visit {
        std::uint64_t parent;
        std::size_t via_symbol;
    };
    std::unordered_map<std::uint64_t, Visit> seen;
    std::deque<std::uint64_t> queue;
    const auto key = [](std::uint32_t x, std::uint32_t y) {
        return (static_cast<std::uint64_t>(x) << 32) | y;
    };
    const std::uint64_t init = key(a.initial, b.initial);
    seen.emplace(init, Visit{init, SIZE_MAX});
    queue.push_back(init);
    while (!queue.empty()) {
        const std::uint64_t p = queue.front();
        queue.pop_front();
        const auto sa = static_cast<std::uint32_t>(p >> 32);
        const auto sb = static_cast<std::uint32_t>(p & 0xffffffffu);
        if (a.labels[sa] != b.labels[sb]) {
            // Reconstruct the symbol path back to the roots.
            std::vector<std::size_t> rev;
            std::uint64_t cur = p;
            while (true) {
                const Visit& v = seen.at(cur);
                if (v.via_symbol == SIZE_MAX) break;
                rev.push_back(v.via_symbol);
                cur = v.parent;
            }
            std::vector<Alphabet::Symbol> word;
            for (auto it = rev.rbegin(); it != rev.rend(); ++it)
                word.push_back(a.alphabet.symbol_at(*it));
            // The path is in feeding order; words read least-significant-first
            // list symbols most-significant-first, so undo the reversal.
            if (a.order == ReadOrder::LsbFirst) std::reverse(word.begin(), word.end());
            return word;
        }
        for (std::size_t sym = 0; sym < nsym; ++sym) {
            const std::uint64_t t = key(a.step(sa, sym), b.step(sb, sym));
            if (seen.emplace(t, Visit{p, sym}).second) queue.push_back(t);
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// DOT export

std::string export_dot(const SyncDFA& a) {
    const std::size_t nsym = a.alphabet.size();
    std::ostringstream os;
    os << "digraph sync_dfa {  // states: " << a.state_count() << "\n";
    for (std::size_t s = 0; s < a.state_count(); ++s) {
        std::string name = !a.state_names.empty() && !a.state_names[s].empty()
                               ? a.state_names[s]
                               : "q" + std::to_string(s);
        os << "  n" << s << " [label=\"" << name << " : " << a.label_name(a.labels[s]) << "\"";
        if (s == a.initial) os << ", penwidth=2";
        if (a.kind == SyncDFA::LabelKind::Acceptor && a.labels[s] == SyncDFA::kAccept)
            os << ", shape=doublecircle";
        os << "];\n";
    }
    for (std::size_t s = 0; s < a.state_count(); ++s) {
        // Group parallel edges; absorbing self-loops carry no information.
        bool absorbing = true;
        for (std::size_t sym = 0; sym < nsym && absorbing; ++sym)
            absorbing = a.step(static_cast<std::uint32_t>(s), sym) == s;
        if (absorbing) continue;
        std::map<std::uint32_t, std::vector<std::size_t>> by_target;
        for (std::size_t sym = 0; sym < nsym; ++sym)
            by_target[a.step(static_cast<std::uint32_t>(s), sym)].push_back(sym);
        for (const auto& [target, syms] : by_target) {
            std::string lbl;
            const std::size_t shown = std::min<std::size_t>(syms.size(), 4);
            for (std::size_t i = 0; i < shown; ++i) {
                if (i) lbl += ' ';
                lbl += a.alphabet.format_symbol(a.alphabet.symbol_at(syms[i]));
            }
            if (syms.size() > shown)
                lbl += " +" + std::to_string(syms.size() - shown) + " more";
            os << "  n" << s << " -> n" << target << " [label=\"" << lbl << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Valid-convolution acceptor

SyncDFA valid_convolution_dfa(const Alphabet& alphabet) {
    const std::size_t tracks = alphabet.track_count();
    const std::size_t nsym = alphabet.size();
    // State: per-track phase in {pre, in, post}, plus one dead state.
    std::size_t live = 1;
    for (std::size_t t = 0; t < tracks; ++t) live *= 3;
    const std::uint32_t dead = static_cast<std::uint32_t>(live);

    SyncDFA out;
    out.alphabet = alphabet;
    out.kind = SyncDFA::LabelKind::Acceptor;
    out.initial = 0;  // all tracks in phase pre
    out.labels.assign(live + 1, SyncDFA::kAccept);
    out.labels[dead] = SyncDFA::kReject;
    out.next.assign((live + 1) * nsym, dead);

    for (std::size_t s = 0; s < live; ++s) {
        std::vector<std::uint8_t> phases(tracks);
        std::size_t rest = s;
        for (std::size_t t = tracks; t-- > 0;) {
            phases[t] = static_cast<std::uint8_t>(rest % 3);
            rest /= 3;
        }
        for (std::size_t sym = 0; sym < nsym; ++sym) {
            const Alphabet::Symbol symbol = alphabet.symbol_at(sym);
            bool ok = true;
            std::size_t target = 0;
            for (std::size_t t = 0; t < tracks; ++t) {
                const bool pad = !symbol[t].has_value();
                std::uint8_t ph = phases[t];
                if (ph == 0)
                    ph = pad ? 0 : 1;
                else if (ph == 1)
                    ph = pad ? 2 : 1;
                else if (pad)
                    ph = 2;
                else
                    ok = false;
                target = target * 3 + ph;
            }
            out.next[s * nsym + sym] =
                ok ? static_cast<std::uint32_t>(target) : dead;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// School adder

SyncDFA compile_school_adder(int base) {
    if (base < 2) throw ValidationError("school adder requires base >= 2");
    SyncDFA out;
    out.order = ReadOrder::LsbFirst;
    out.kind = SyncDFA::LabelKind::Acceptor;
    for (int t = 0; t < 3; ++t)
        out.alphabet.tracks.push_back(TrackAlphabet{0, base - 1, /*with_pad=*/true});
    const std::size_t nsym = out.alphabet.size();
    // States: n = 0 (correct, no carry), c = 1 (correct, carry), i = 2.
    out.labels = {SyncDFA::kAccept, SyncDFA::kReject, SyncDFA::kReject};
    out.state_names = {"n", "c", "i"};
    out.initial = 0;
    out.next.assign(3 * nsym, 2);
    for (std::size_t sym = 0; sym < nsym; ++sym) {
        const Alphabet::Symbol s = out.alphabet.symbol_at(sym);
        const std::int64_t x = s[0].value_or(0);  // # is identified with 0
        const std::int64_t y = s[1].value_or(0);
        const std::int64_t z = s[2].value_or(0);
        for (std::uint32_t carry = 0; carry <= 1; ++carry) {
            const std::int64_t sum = x + y + carry;
            std::uint32_t target;
            if (sum < base)
                target = (z == sum) ? 0u : 2u;
            else
                target = (z == sum - base) ? 1u : 2u;
            out.next[carry * nsym + sym] = target;
        }
    }
    return out;
}

AdderTrace school_adder_trace(int base, const LaurentDigits& x, const LaurentDigits& y,
                              const LaurentDigits& z) {
    const SyncDFA adder = compile_school_adder(base);
    const ConvWord w = convolve({x, y, z});
    AdderTrace out;
    const std::size_t cols = w.symbols.size();
    std::vector<std::uint32_t> boundary(cols + 1);
    boundary[cols] = adder.initial;
    for (std::size_t j = cols; j-- > 0;)
        boundary[j] = adder.step(boundary[j + 1], adder.alphabet.index_of(w.symbols[j]));
    std::ostringstream os;
    for (std::size_t j = 0; j <= cols; ++j) {
        out.states.push_back(adder.state_names[boundary[j]]);
        if (j) {
            os << ' ';
            // The radix dot sits between the exponent-0 and exponent-(-1)
            // columns; the printed trace mirrors it with a double space.
            if (!w.symbols.empty() && w.top >= 0 &&
                j == static_cast<std::size_t>(w.top) + 1 &&
                w.top - static_cast<int>(cols) + 1 <= -1)
                os << ' ';
        }
        os << out.states.back();
    }
    out.trace = os.str();
    out.accepted = adder.labels[boundary[0]] == SyncDFA::kAccept;
    return out;
}

}  // namespace semigrid

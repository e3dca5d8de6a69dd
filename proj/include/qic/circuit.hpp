// Copyright 2026 The qic authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qic/errors.hpp"

namespace qic {

/// Qubit register layout: q value qubits, n position qubits per axis
/// (Y then X), one auxiliary. Total is always q + 2n + 1.
struct RegisterLayout {
    std::uint16_t q = 8;
    std::uint16_t n = 0;

    RegisterLayout() = default;
    RegisterLayout(std::uint16_t value_bits, std::uint16_t pos_bits)
        : q(value_bits), n(pos_bits) {
        if (q < 1)
            throw std::invalid_argument("layout requires at least one value qubit");
    }

    [[nodiscard]] std::uint16_t total() const { return std::uint16_t(q + 2 * n + 1); }

    // Index map: value[0..q), posY[q..q+n), posX[q+n..q+2n), aux last.
    [[nodiscard]] std::uint16_t value(std::uint16_t i) const { return i; }
    [[nodiscard]] std::uint16_t pos_y(std::uint16_t j) const { return std::uint16_t(q + j); }
    [[nodiscard]] std::uint16_t pos_x(std::uint16_t j) const { return std::uint16_t(q + n + j); }
    [[nodiscard]] std::uint16_t aux() const { return std::uint16_t(q + 2 * n); }

    [[nodiscard]] bool is_value(std::uint16_t idx) const { return idx < q; }
    [[nodiscard]] bool is_pos_y(std::uint16_t idx) const { return idx >= q && idx < q + n; }
    [[nodiscard]] bool is_pos_x(std::uint16_t idx) const {
        return idx >= q + n && idx < q + 2 * n;
    }
    [[nodiscard]] bool is_position(std::uint16_t idx) const {
        return idx >= q && idx < q + 2 * n;
    }
    [[nodiscard]] bool is_aux(std::uint16_t idx) const { return idx == aux(); }

    bool operator==(const RegisterLayout &) const = default;
};

enum class GateKind : std::uint8_t {
    Identity, // implied by state preparation; never materialized in gate lists
    Hadamard,
    PauliX,
    MCX,
    Reset,
};

/// Control polarity: closed fires on |1>, open fires on |0>.
enum class Polarity : std::uint8_t { Closed, Open };

struct Control {
    std::uint16_t qubit = 0;
    Polarity polarity = Polarity::Closed;

    bool operator==(const Control &) const = default;
};

struct Gate {
    GateKind kind = GateKind::Identity;
    std::uint16_t target = 0;
    std::vector<Control> controls; // MCX only

    bool operator==(const Gate &) const = default;
};

inline Gate make_h(std::uint16_t target) { return Gate{GateKind::Hadamard, target, {}}; }
inline Gate make_x(std::uint16_t target) { return Gate{GateKind::PauliX, target, {}}; }
inline Gate make_reset(std::uint16_t target) { return Gate{GateKind::Reset, target, {}}; }
inline Gate make_mcx(std::vector<Control> controls, std::uint16_t target) {
    return Gate{GateKind::MCX, target, std::move(controls)};
}
inline Gate make_cx(std::uint16_t control, std::uint16_t target) {
    return make_mcx({Control{control, Polarity::Closed}}, target);
}

/// Classical sign marker for one encoded position.
struct SignEntry {
    std::uint32_t y = 0;
    std::uint32_t x = 0;

    bool operator==(const SignEntry &) const = default;
};

/// Classical side channel carried with a circuit: scheme and source labels,
/// and for transform-domain circuits the quantization step, block address,
/// image extents, and coefficient signs.
struct CircuitMeta {
    std::string scheme;  // "strictneqr", "efrqi", "scmfrqi", "zscneqr", or free-form
    std::string source;  // image or block identifier
    std::string domain;  // "", "pixel", "dct"
    int q_factor = 0;    // 0 means unset
    std::optional<std::pair<std::uint32_t, std::uint32_t>> block;        // (row, col)
    std::optional<std::array<std::uint32_t, 4>> image_dims;              // w, h, orig_w, orig_h
    std::vector<SignEntry> negative_positions;

    bool operator==(const CircuitMeta &) const = default;
};

struct GateStats {
    std::size_t identity = 0;
    std::size_t hadamard = 0;
    std::size_t pauli_x = 0;
    std::size_t mcx = 0;
    std::size_t reset = 0;
    std::size_t control_terminals = 0;

    bool operator==(const GateStats &) const = default;
};

struct Circuit {
    RegisterLayout layout;
    CircuitMeta meta;
    std::vector<Gate> gates;

    /// Identity gates implied by state preparation (value qubits + aux).
    /// They are accounted for here rather than materialized.
    [[nodiscard]] std::size_t implied_identity_gates() const { return std::size_t(layout.q) + 1; }

    /// Pauli-X writes straight to aux: the degenerate form a zero-discarded
    /// position selector takes when every position bit is zero.
    [[nodiscard]] std::size_t degenerate_aux_writes() const {
        std::size_t count = 0;
        for (const Gate &g : gates)
            if (g.kind == GateKind::PauliX && layout.is_aux(g.target))
                ++count;
        return count;
    }

    void validate() const {
        const std::uint16_t total = layout.total();
        for (const Gate &g : gates) {
            if (g.kind == GateKind::Identity)
                throw Error("identity gates are implied by preparation, not materialized");
            if (g.target >= total)
                throw Error("gate target " + std::to_string(g.target) + " out of range");
            if (g.kind != GateKind::MCX && !g.controls.empty())
                throw Error("only MCX gates carry controls");
            if (g.kind == GateKind::MCX && g.controls.empty())
                throw Error("MCX requires at least one control");
            if (g.kind == GateKind::Reset && !layout.is_aux(g.target))
                throw Error("reset targets the auxiliary qubit only");
            for (std::size_t i = 0; i < g.controls.size(); ++i) {
                const Control &c = g.controls[i];
                if (c.qubit >= total)
                    throw Error("control qubit " + std::to_string(c.qubit) + " out of range");
                if (c.qubit == g.target)
                    throw Error("control coincides with target");
                for (std::size_t j = i + 1; j < g.controls.size(); ++j)
                    if (g.controls[j].qubit == c.qubit)
                        throw Error("duplicate control on qubit " + std::to_string(c.qubit));
            }
        }
    }

    bool operator==(const Circuit &) const = default;
};

inline GateStats gate_stats(const Circuit &c) {
    GateStats st;
    for (const Gate &g : c.gates) {
        switch (g.kind) {
        case GateKind::Identity: ++st.identity; break;
        case GateKind::Hadamard: ++st.hadamard; break;
        case GateKind::PauliX: ++st.pauli_x; break;
        case GateKind::MCX: ++st.mcx; break;
        case GateKind::Reset: ++st.reset; break;
        }
        st.control_terminals += g.controls.size();
    }
    return st;
}

namespace detail {

inline std::string qubit_name(const RegisterLayout &layout, std::uint16_t idx) {
    if (layout.is_value(idx))
        return "v" + std::to_string(idx);
    if (layout.is_pos_y(idx))
        return "y" + std::to_string(idx - layout.q);
    if (layout.is_pos_x(idx))
        return "x" + std::to_string(idx - layout.q - layout.n);
    return "aux";
}

inline std::uint16_t parse_qubit(const RegisterLayout &layout, std::string_view tok,
                                 std::size_t line) {
    if (tok == "aux")
        return layout.aux();
    if (tok.empty())
        throw ParseError(line, "empty qubit token");
    const char reg = tok[0];
    if (reg != 'v' && reg != 'y' && reg != 'x')
        throw ParseError(line, "unknown register '" + std::string(tok) + "'");
    std::uint32_t idx = 0;
    if (tok.size() < 2)
        throw ParseError(line, "missing index in '" + std::string(tok) + "'");
    for (char ch : tok.substr(1)) {
        if (ch < '0' || ch > '9')
            throw ParseError(line, "bad qubit index in '" + std::string(tok) + "'");
        idx = idx * 10 + std::uint32_t(ch - '0');
        if (idx > 0xFFFF)
            throw ParseError(line, "qubit index out of range in '" + std::string(tok) + "'");
    }
    std::uint32_t resolved;
    std::uint32_t limit;
    if (reg == 'v') {
        resolved = idx;
        limit = layout.q;
    } else if (reg == 'y') {
        resolved = layout.q + idx;
        limit = std::uint32_t(layout.q) + layout.n;
    } else {
        resolved = std::uint32_t(layout.q) + layout.n + idx;
        limit = std::uint32_t(layout.q) + 2 * layout.n;
    }
    if (reg != 'v' && layout.n == 0)
        throw ParseError(line, "layout has no position qubits");
    if ((reg == 'v' && idx >= layout.q) || (reg != 'v' && idx >= layout.n) || resolved >= limit)
        throw ParseError(line, "qubit index out of range in '" + std::string(tok) + "'");
    return static_cast<std::uint16_t>(resolved);
}

inline std::vector<std::string> split_tokens(std::string_view s) {
    std::vector<std::string> toks;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
            ++i;
        std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t')
            ++i;
        if (i > start)
            toks.emplace_back(s.substr(start, i - start));
    }
    return toks;
}

} // namespace detail

/// Render a circuit in the line-based text format. Deterministic: equal
/// circuits serialize to identical text.
inline std::string serialize(const Circuit &c) {
    c.validate();
    std::string out;
    out += "QUBITS " + std::to_string(c.layout.total()) + "\n";
    out += "LAYOUT q=" + std::to_string(c.layout.q) + " n=" + std::to_string(c.layout.n) + "\n";
    if (!c.meta.scheme.empty())
        out += "SCHEME " + c.meta.scheme + "\n";
    if (!c.meta.source.empty())
        out += "SOURCE " + c.meta.source + "\n";
    if (!c.meta.domain.empty())
        out += "DOMAIN " + c.meta.domain + "\n";
    if (c.meta.q_factor > 0)
        out += "Q " + std::to_string(c.meta.q_factor) + "\n";
    if (c.meta.block)
        out += "BLOCK " + std::to_string(c.meta.block->first) + " " +
               std::to_string(c.meta.block->second) + "\n";
    if (c.meta.image_dims) {
        const auto &d = *c.meta.image_dims;
        out += "IMAGE " + std::to_string(d[0]) + " " + std::to_string(d[1]) + " " +
               std::to_string(d[2]) + " " + std::to_string(d[3]) + "\n";
    }
    for (const SignEntry &s : c.meta.negative_positions)
        out += "SIGN " + std::to_string(s.y) + " " + std::to_string(s.x) + " -\n";
    for (const Gate &g : c.gates) {
        switch (g.kind) {
        case GateKind::Hadamard:
            out += "H " + detail::qubit_name(c.layout, g.target) + "\n";
            break;
        case GateKind::PauliX:
            out += "X " + detail::qubit_name(c.layout, g.target) + "\n";
            break;
        case GateKind::Reset:
            out += "RESET aux\n";
            break;
        case GateKind::MCX: {
            out += "MCX";
            for (const Control &ctl : g.controls) {
                out += (ctl.polarity == Polarity::Closed) ? " +" : " -";
                out += detail::qubit_name(c.layout, ctl.qubit);
            }
            out += " " + detail::qubit_name(c.layout, g.target) + "\n";
            break;
        }
        case GateKind::Identity:
            throw Error("identity gates are not serializable");
        }
    }
    return out;
}

namespace detail {

struct NumberedLine {
    std::size_t number; // 1-based in the whole input
    std::string text;   // comments stripped, trimmed, nonempty
};

inline std::vector<NumberedLine> strip_lines(std::string_view text) {
    std::vector<NumberedLine> lines;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        ++lineno;
        std::string_view raw = text.substr(pos, end - pos);
        if (auto hash = raw.find('#'); hash != std::string_view::npos)
            raw = raw.substr(0, hash);
        std::size_t b = 0, e = raw.size();
        while (b < e && (raw[b] == ' ' || raw[b] == '\t' || raw[b] == '\r'))
            ++b;
        while (e > b && (raw[e - 1] == ' ' || raw[e - 1] == '\t' || raw[e - 1] == '\r'))
            --e;
        if (e > b)
            lines.push_back({lineno, std::string(raw.substr(b, e - b))});
        if (end == text.size())
            break;
        pos = end + 1;
    }
    return lines;
}

inline std::uint32_t parse_u32(const std::string &tok, std::size_t line, const char *what) {
    std::uint64_t v = 0;
    if (tok.empty())
        throw ParseError(line, std::string("missing ") + what);
    for (char ch : tok) {
        if (ch < '0' || ch > '9')
            throw ParseError(line, std::string("non-numeric ") + what + " '" + tok + "'");
        v = v * 10 + std::uint64_t(ch - '0');
        if (v > 0xFFFFFFFFull)
            throw ParseError(line, std::string(what) + " out of range");
    }
    return static_cast<std::uint32_t>(v);
}

// Parse one circuit section from lines[first..), returning the index one
// past its last line.
inline std::size_t parse_section(const std::vector<NumberedLine> &lines, std::size_t first,
                                 Circuit &out) {
    std::size_t i = first;
    if (i >= lines.size())
        throw ParseError("empty circuit text");

    std::optional<std::uint32_t> declared_qubits;
    std::optional<RegisterLayout> layout;
    CircuitMeta meta;
    bool seen_gate = false;
    std::vector<Gate> gates;

    for (; i < lines.size(); ++i) {
        const auto &[lineno, text] = lines[i];
        const std::vector<std::string> tok = split_tokens(text);
        const std::string &head = tok[0];

        if (head == "QUBITS") {
            if (i != first)
                break; // next circuit section
            if (tok.size() != 2)
                throw ParseError(lineno, "QUBITS wants one argument");
            declared_qubits = parse_u32(tok[1], lineno, "qubit count");
            continue;
        }

        const bool is_header = head == "LAYOUT" || head == "SCHEME" || head == "SOURCE" ||
                               head == "DOMAIN" || head == "Q" || head == "BLOCK" ||
                               head == "IMAGE" || head == "SIGN";
        if (is_header && seen_gate)
            throw ParseError(lineno, "header '" + head + "' after gate lines");

        if (head == "LAYOUT") {
            if (tok.size() != 3 || tok[1].rfind("q=", 0) != 0 || tok[2].rfind("n=", 0) != 0)
                throw ParseError(lineno, "LAYOUT wants 'q=<q> n=<n>'");
            const std::uint32_t q = parse_u32(tok[1].substr(2), lineno, "q");
            const std::uint32_t n = parse_u32(tok[2].substr(2), lineno, "n");
            if (q < 1 || q > 0x3FFF || n > 0x3FFF)
                throw ParseError(lineno, "layout parameters out of range");
            layout = RegisterLayout(std::uint16_t(q), std::uint16_t(n));
        } else if (head == "SCHEME") {
            if (tok.size() != 2)
                throw ParseError(lineno, "SCHEME wants one name");
            meta.scheme = tok[1];
        } else if (head == "SOURCE") {
            if (tok.size() != 2)
                throw ParseError(lineno, "SOURCE wants one identifier");
            meta.source = tok[1];
        } else if (head == "DOMAIN") {
            if (tok.size() != 2 || (tok[1] != "pixel" && tok[1] != "dct"))
                throw ParseError(lineno, "DOMAIN wants 'pixel' or 'dct'");
            meta.domain = tok[1];
        } else if (head == "Q") {
            if (tok.size() != 2)
                throw ParseError(lineno, "Q wants one integer");
            meta.q_factor = int(parse_u32(tok[1], lineno, "quantization factor"));
        } else if (head == "BLOCK") {
            if (tok.size() != 3)
                throw ParseError(lineno, "BLOCK wants row and column");
            meta.block = {parse_u32(tok[1], lineno, "block row"),
                          parse_u32(tok[2], lineno, "block column")};
        } else if (head == "IMAGE") {
            if (tok.size() != 5)
                throw ParseError(lineno, "IMAGE wants w h orig_w orig_h");
            meta.image_dims = {{parse_u32(tok[1], lineno, "width"),
                                parse_u32(tok[2], lineno, "height"),
                                parse_u32(tok[3], lineno, "orig width"),
                                parse_u32(tok[4], lineno, "orig height")}};
        } else if (head == "SIGN") {
            if (tok.size() != 4 || tok[3] != "-")
                throw ParseError(lineno, "SIGN wants 'y x -'");
            meta.negative_positions.push_back(
                {parse_u32(tok[1], lineno, "sign row"), parse_u32(tok[2], lineno, "sign column")});
        } else if (head == "H" || head == "X" || head == "I") {
            if (!layout)
                throw ParseError(lineno, "gate before LAYOUT header");
            if (tok.size() != 2)
                throw ParseError(lineno, head + " wants one target qubit");
            if (head == "I")
                throw ParseError(lineno, "identity gates are implied, not listed");
            seen_gate = true;
            const std::uint16_t target = parse_qubit(*layout, tok[1], lineno);
            gates.push_back(head == "H" ? make_h(target) : make_x(target));
        } else if (head == "RESET") {
            if (!layout)
                throw ParseError(lineno, "gate before LAYOUT header");
            if (tok.size() != 2 || tok[1] != "aux")
                throw ParseError(lineno, "RESET wants the aux qubit");
            seen_gate = true;
            gates.push_back(make_reset(layout->aux()));
        } else if (head == "MCX") {
            if (!layout)
                throw ParseError(lineno, "gate before LAYOUT header");
            if (tok.size() < 3)
                throw ParseError(lineno, "MCX wants at least one control and a target");
            seen_gate = true;
            std::vector<Control> controls;
            for (std::size_t t = 1; t + 1 < tok.size(); ++t) {
                const std::string &ct = tok[t];
                if (ct.size() < 2 || (ct[0] != '+' && ct[0] != '-'))
                    throw ParseError(lineno, "control '" + ct + "' missing +/- polarity");
                const Polarity pol = (ct[0] == '+') ? Polarity::Closed : Polarity::Open;
                const std::uint16_t qb = parse_qubit(*layout, std::string_view(ct).substr(1),
                                                     lineno);
                for (const Control &prev : controls)
                    if (prev.qubit == qb)
                        throw ParseError(lineno, "duplicate control '" + ct + "'");
                controls.push_back({qb, pol});
            }
            const std::uint16_t target = parse_qubit(*layout, tok.back(), lineno);
            for (const Control &prev : controls)
                if (prev.qubit == target)
                    throw ParseError(lineno, "control coincides with target");
            gates.push_back(make_mcx(std::move(controls), target));
        } else {
            throw ParseError(lineno, "unknown mnemonic '" + head + "'");
        }
    }

    if (!layout)
        throw ParseError(lines[first].number, "missing LAYOUT header");
    if (declared_qubits && *declared_qubits != layout->total())
        throw ParseError(lines[first].number,
                         "QUBITS " + std::to_string(*declared_qubits) + " does not match layout total " +
                             std::to_string(layout->total()));

    out.layout = *layout;
    out.meta = std::move(meta);
    out.gates = std::move(gates);
    out.validate();
    return i;
}

} // namespace detail

/// Parse one circuit; trailing content is an error.
inline Circuit parse(std::string_view text) {
    const auto lines = detail::strip_lines(text);
    Circuit c;
    const std::size_t end = detail::parse_section(lines, 0, c);
    if (end != lines.size())
        throw ParseError(lines[end].number, "trailing content after circuit");
    return c;
}

/// Parse a concatenation of circuit sections (each introduced by QUBITS).
inline std::vector<Circuit> parse_sequence(std::string_view text) {
    const auto lines = detail::strip_lines(text);
    std::vector<Circuit> out;
    std::size_t i = 0;
    while (i < lines.size()) {
        Circuit c;
        i = detail::parse_section(lines, i, c);
        out.push_back(std::move(c));
    }
    if (out.empty())
        throw ParseError("empty circuit text");
    return out;
}

inline std::string serialize_sequence(const std::vector<Circuit> &circuits) {
    std::string out;
    for (const Circuit &c : circuits)
        out += serialize(c);
    return out;
}

} // namespace qic

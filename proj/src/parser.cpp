#include "qcs/pulse/parser.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace qcs::pulse {

const FrameDecl* PulseProgram::find_frame(const std::string& name) const {
    for (const auto& f : frames) {
        if (f.name == name) return &f;
    }
    return nullptr;
}

const WaveformDecl* PulseProgram::find_waveform(const std::string& name) const {
    for (const auto& w : waveforms) {
        if (w.name == name) return &w;
    }
    return nullptr;
}

namespace {

enum class TokKind { ident, number, semicolon, lbrace, rbrace, comma, equals, eof };

struct Token {
    TokKind kind = TokKind::eof;
    std::string text;
    double value = 0.0;
    bool is_integer = false;
    std::size_t line = 1;
    std::size_t column = 1;
};

const char* describe(TokKind kind) {
    switch (kind) {
        case TokKind::ident: return "identifier";
        case TokKind::number: return "number";
        case TokKind::semicolon: return "';'";
        case TokKind::lbrace: return "'{'";
        case TokKind::rbrace: return "'}'";
        case TokKind::comma: return "','";
        case TokKind::equals: return "'='";
        case TokKind::eof: return "end of input";
    }
    return "token";
}

class Lexer {
  public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_space_and_comments();
        Token tok;
        tok.line = line_;
        tok.column = column_;
        if (pos_ >= text_.size()) {
            tok.kind = TokKind::eof;
            return tok;
        }
        const char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                tok.text += text_[pos_];
                advance();
            }
            tok.kind = TokKind::ident;
            return tok;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
            return lex_number(tok);
        }
        switch (c) {
            case ';': tok.kind = TokKind::semicolon; break;
            case '{': tok.kind = TokKind::lbrace; break;
            case '}': tok.kind = TokKind::rbrace; break;
            case ',': tok.kind = TokKind::comma; break;
            case '=': tok.kind = TokKind::equals; break;
            default:
                throw ParseError(line_, column_, std::string("unexpected character '") + c + "'");
        }
        tok.text = c;
        advance();
        return tok;
    }

  private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space_and_comments() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    Token lex_number(Token tok) {
        const std::size_t start = pos_;
        bool is_integer = true;
        if (text_[pos_] == '-' || text_[pos_] == '+') advance();
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            advance();
        }
        if (pos_ < text_.size() && text_[pos_] == '.') {
            is_integer = false;
            advance();
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                advance();
            }
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            is_integer = false;
            advance();
            if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) advance();
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                advance();
            }
        }
        tok.text = text_.substr(start, pos_ - start);
        tok.kind = TokKind::number;
        tok.is_integer = is_integer;
        char* end = nullptr;
        tok.value = std::strtod(tok.text.c_str(), &end);
        if (end != tok.text.c_str() + tok.text.size()) {
            throw ParseError(tok.line, tok.column, "malformed number '" + tok.text + "'");
        }
        return tok;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

class Parser {
  public:
    explicit Parser(const std::string& text) : lexer_(text) { shift(); }

    PulseProgram parse() {
        while (current_.kind != TokKind::eof) {
            if (current_.kind != TokKind::ident) {
                fail("expected a declaration or statement keyword");
            }
            const std::string kw = current_.text;
            if (kw == "frame") {
                parse_frame();
            } else if (kw == "waveform") {
                parse_waveform();
            } else if (kw == "play") {
                parse_play();
            } else if (kw == "delay") {
                parse_delay();
            } else if (kw == "set_frequency") {
                parse_set_frequency();
            } else if (kw == "shift_phase") {
                parse_shift_phase();
            } else if (kw == "barrier") {
                parse_barrier();
            } else if (kw == "capture") {
                parse_capture();
            } else {
                fail("unknown keyword '" + kw + "'");
            }
        }
        return std::move(program_);
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(current_.line, current_.column, msg);
    }

    void shift() { current_ = lexer_.next(); }

    Token expect(TokKind kind, const char* what = nullptr) {
        if (current_.kind != kind) {
            fail(std::string("expected ") + (what ? what : describe(kind)) + ", found " +
                 describe(current_.kind) +
                 (current_.text.empty() ? "" : " '" + current_.text + "'"));
        }
        Token tok = current_;
        shift();
        return tok;
    }

    Token expect_keyword_value(const std::string& key) {
        Token name = expect(TokKind::ident, ("'" + key + "='").c_str());
        if (name.text != key) {
            throw ParseError(name.line, name.column,
                             "expected '" + key + "=', found '" + name.text + "'");
        }
        expect(TokKind::equals);
        return expect(TokKind::number);
    }

    std::uint64_t to_unsigned(const Token& tok, const char* what) {
        if (!tok.is_integer) {
            throw ParseError(tok.line, tok.column, std::string(what) + " must be an integer");
        }
        if (tok.value < 0) throw ParseError(tok.line, tok.column, "negative duration");
        if (tok.value > 9007199254740992.0) {  // 2^53, exact-integer limit
            throw ParseError(tok.line, tok.column, std::string(what) + " too large");
        }
        return static_cast<std::uint64_t>(tok.value);
    }

    void check_new_declaration(const Token& name) {
        if (program_.find_frame(name.text) || program_.find_waveform(name.text)) {
            throw ParseError(name.line, name.column,
                             "duplicate declaration of '" + name.text + "'");
        }
    }

    const FrameDecl& resolve_frame(const Token& name) {
        if (const auto* f = program_.find_frame(name.text)) return *f;
        throw ParseError(name.line, name.column, "undeclared frame " + name.text);
    }

    const WaveformDecl& resolve_waveform(const Token& name) {
        if (const auto* w = program_.find_waveform(name.text)) return *w;
        throw ParseError(name.line, name.column, "undeclared waveform " + name.text);
    }

    void parse_frame() {
        shift();
        Token name = expect(TokKind::ident, "frame name");
        check_new_declaration(name);
        FrameDecl frame;
        frame.name = name.text;
        Token ch = expect_keyword_value("ch");
        if (!ch.is_integer || ch.value < 0) {
            throw ParseError(ch.line, ch.column, "channel must be a non-negative integer");
        }
        frame.channel = static_cast<std::uint32_t>(ch.value);
        frame.freq_hz = expect_keyword_value("freq").value;
        frame.phase_rad = expect_keyword_value("phase").value;
        expect(TokKind::semicolon);
        for (const auto& other : program_.frames) {
            if (other.channel == frame.channel) {
                throw ParseError(name.line, name.column,
                                 "channel " + std::to_string(frame.channel) +
                                     " already bound by frame " + other.name);
            }
        }
        program_.frames.push_back(std::move(frame));
    }

    void parse_waveform() {
        shift();
        Token name = expect(TokKind::ident, "waveform name");
        check_new_declaration(name);
        WaveformDecl wf;
        wf.name = name.text;
        Token kind = expect(TokKind::ident, "envelope kind");
        const auto parsed = envelope_kind_from_string(kind.text);
        if (!parsed) {
            throw ParseError(kind.line, kind.column,
                             "unknown envelope kind '" + kind.text +
                                 "' (expected rect, gaussian or blackman)");
        }
        wf.kind = *parsed;
        Token len = expect_keyword_value("len");
        if (!len.is_integer || len.value < 1) {
            throw ParseError(len.line, len.column, "waveform length must be >= 1 sample");
        }
        if (len.value > 65535) {
            throw ParseError(len.line, len.column, "waveform length exceeds 65535 samples");
        }
        wf.length = static_cast<std::uint32_t>(len.value);
        while (current_.kind == TokKind::ident) {
            Token key = expect(TokKind::ident);
            expect(TokKind::equals);
            Token val = expect(TokKind::number);
            if (key.text == "sigma") {
                if (wf.kind != EnvelopeKind::gaussian || !(val.value > 0.0)) {
                    throw ParseError(key.line, key.column,
                                     "sigma only applies to gaussian waveforms and must be > 0");
                }
            } else {
                throw ParseError(key.line, key.column,
                                 "unknown waveform parameter '" + key.text + "'");
            }
            wf.params[key.text] = val.value;
        }
        expect(TokKind::semicolon);
        program_.waveforms.push_back(std::move(wf));
    }

    void parse_play() {
        shift();
        PlayStmt stmt;
        stmt.frame = resolve_frame(expect(TokKind::ident, "frame name")).name;
        stmt.waveform = resolve_waveform(expect(TokKind::ident, "waveform name")).name;
        if (current_.kind == TokKind::ident) {
            stmt.amplitude = expect_keyword_value("amp").value;
        }
        expect(TokKind::semicolon);
        program_.body.emplace_back(std::move(stmt));
    }

    void parse_delay() {
        shift();
        Token ticks = expect(TokKind::number, "delay ticks");
        expect(TokKind::semicolon);
        program_.body.emplace_back(DelayStmt{to_unsigned(ticks, "delay")});
    }

    void parse_set_frequency() {
        shift();
        SetFrequencyStmt stmt;
        stmt.frame = resolve_frame(expect(TokKind::ident, "frame name")).name;
        stmt.freq_hz = expect(TokKind::number).value;
        expect(TokKind::semicolon);
        program_.body.emplace_back(std::move(stmt));
    }

    void parse_shift_phase() {
        shift();
        ShiftPhaseStmt stmt;
        stmt.frame = resolve_frame(expect(TokKind::ident, "frame name")).name;
        stmt.delta_rad = expect(TokKind::number).value;
        expect(TokKind::semicolon);
        program_.body.emplace_back(std::move(stmt));
    }

    void parse_barrier() {
        shift();
        expect(TokKind::lbrace);
        BarrierStmt stmt;
        stmt.frames.push_back(resolve_frame(expect(TokKind::ident, "frame name")).name);
        while (current_.kind == TokKind::comma) {
            shift();
            stmt.frames.push_back(resolve_frame(expect(TokKind::ident, "frame name")).name);
        }
        expect(TokKind::rbrace);
        expect(TokKind::semicolon);
        program_.body.emplace_back(std::move(stmt));
    }

    void parse_capture() {
        shift();
        CaptureStmt stmt;
        stmt.frame = resolve_frame(expect(TokKind::ident, "frame name")).name;
        Token len = expect_keyword_value("len");
        if (!len.is_integer) {
            throw ParseError(len.line, len.column, "capture length must be an integer");
        }
        if (len.value < 0) throw ParseError(len.line, len.column, "negative duration");
        if (len.value < 1) {
            throw ParseError(len.line, len.column, "capture length must be >= 1 sample");
        }
        stmt.length = static_cast<std::uint32_t>(len.value);
        expect(TokKind::semicolon);
        program_.body.emplace_back(std::move(stmt));
    }

    Lexer lexer_;
    Token current_;
    PulseProgram program_;
};

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct StatementPrinter {
    std::ostringstream& out;

    void operator()(const PlayStmt& s) const {
        out << "play " << s.frame << " " << s.waveform;
        if (s.amplitude != 1.0) out << " amp=" << format_double(s.amplitude);
        out << ";\n";
    }
    void operator()(const DelayStmt& s) const { out << "delay " << s.ticks << ";\n"; }
    void operator()(const SetFrequencyStmt& s) const {
        out << "set_frequency " << s.frame << " " << format_double(s.freq_hz) << ";\n";
    }
    void operator()(const ShiftPhaseStmt& s) const {
        out << "shift_phase " << s.frame << " " << format_double(s.delta_rad) << ";\n";
    }
    void operator()(const BarrierStmt& s) const {
        out << "barrier {";
        for (std::size_t i = 0; i < s.frames.size(); ++i) {
            if (i) out << ", ";
            out << s.frames[i];
        }
        out << "};\n";
    }
    void operator()(const CaptureStmt& s) const {
        out << "capture " << s.frame << " len=" << s.length << ";\n";
    }
};

}  // namespace

PulseProgram parse_program(const std::string& text) { return Parser(text).parse(); }

std::string pretty_print(const PulseProgram& program) {
    std::ostringstream out;
    for (const auto& f : program.frames) {
        out << "frame " << f.name << " ch=" << f.channel << " freq=" << format_double(f.freq_hz)
            << " phase=" << format_double(f.phase_rad) << ";\n";
    }
    for (const auto& w : program.waveforms) {
        out << "waveform " << w.name << " " << to_string(w.kind) << " len=" << w.length;
        for (const auto& [key, value] : w.params) {
            out << " " << key << "=" << format_double(value);
        }
        out << ";\n";
    }
    for (const auto& stmt : program.body) {
        std::visit(StatementPrinter{out}, stmt);
    }
    return out.str();
}

}  // namespace qcs::pulse

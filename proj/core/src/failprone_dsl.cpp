// Copyright 2026 The asymbft Authors. Licensed under the Apache License,
// Version 2.0. See the LICENSE file at the root of this distribution or at
// http://www.apache.org/licenses/LICENSE-2.0

#include "asymbft/failprone_dsl.hpp"

#include "asymbft/errors.hpp"

#include <cctype>

namespace asymbft
{

namespace
{

class Parser
{
  public:
    Parser(std::string_view text, Roster const& roster)
        : mText(text), mRoster(roster)
    {
    }

    TrustExpr
    parseAll()
    {
        TrustExpr e = parseExpr();
        skipSpace();
        if (mPos != mText.size())
        {
            fail("unexpected '" + std::string(1, mText[mPos]) + "'");
        }
        return e;
    }

  private:
    [[noreturn]] void
    fail(std::string const& what) const
    {
        throw ParseError(what, mPos);
    }

    void
    skipSpace()
    {
        while (mPos < mText.size() &&
               std::isspace(static_cast<unsigned char>(mText[mPos])))
        {
            ++mPos;
        }
    }

    bool
    accept(char c)
    {
        skipSpace();
        if (mPos < mText.size() && mText[mPos] == c)
        {
            ++mPos;
            return true;
        }
        return false;
    }

    void
    expect(char c)
    {
        if (!accept(c))
        {
            fail(std::string("expected '") + c + "'");
        }
    }

    TrustExpr
    parseExpr()
    {
        TrustExpr left = parseTerm();
        while (accept('*'))
        {
            TrustExpr product;
            product.kind = TrustExpr::Kind::Product;
            product.children.push_back(std::move(left));
            product.children.push_back(parseTerm());
            left = std::move(product);
        }
        return left;
    }

    TrustExpr
    parseTerm()
    {
        skipSpace();
        if (accept('{'))
        {
            TrustExpr lit;
            lit.kind = TrustExpr::Kind::Literal;
            lit.names = parseNames();
            return lit;
        }
        if (accept('['))
        {
            TrustExpr list;
            list.kind = TrustExpr::Kind::UnionList;
            if (accept(']'))
            {
                return list;
            }
            do
            {
                list.children.push_back(parseExpr());
            } while (accept(','));
            expect(']');
            return list;
        }
        if (mText.substr(mPos, 5) == "theta")
        {
            mPos += 5;
            expect('(');
            std::size_t const kPos = (skipSpace(), mPos);
            std::size_t const k = parseNumber();
            expect(',');
            expect('{');
            std::size_t const namesPos = mPos;
            ProcessSet names = parseNames();
            expect(')');
            if (names.empty())
            {
                throw ParseError("theta needs at least one name", namesPos);
            }
            if (k < 1 || k > names.size())
            {
                throw ParseError("threshold k=" + std::to_string(k) +
                                     " out of range [1, " +
                                     std::to_string(names.size()) + "]",
                                 kPos);
            }
            TrustExpr t;
            t.kind = TrustExpr::Kind::Threshold;
            t.k = k;
            t.names = names;
            return t;
        }
        fail("expected '{', '[' or 'theta('");
    }

    std::size_t
    parseNumber()
    {
        skipSpace();
        std::size_t const start = mPos;
        std::size_t value = 0;
        while (mPos < mText.size() &&
               std::isdigit(static_cast<unsigned char>(mText[mPos])))
        {
            value = value * 10 + static_cast<std::size_t>(mText[mPos] - '0');
            if (value > 1000000)
            {
                throw ParseError("number too large", start);
            }
            ++mPos;
        }
        if (mPos == start)
        {
            fail("expected a number");
        }
        return value;
    }

    // Parses "name, name, ...}" after the opening brace.
    ProcessSet
    parseNames()
    {
        ProcessSet set(mRoster.size());
        if (accept('}'))
        {
            return set;
        }
        do
        {
            skipSpace();
            std::size_t const start = mPos;
            while (mPos < mText.size() &&
                   (std::isalnum(static_cast<unsigned char>(mText[mPos])) ||
                    mText[mPos] == '_' || mText[mPos] == '-' ||
                    mText[mPos] == '.'))
            {
                ++mPos;
            }
            if (mPos == start)
            {
                fail("expected a process name");
            }
            std::string const name(mText.substr(start, mPos - start));
            ProcessId idx = mRoster.size();
            for (ProcessId i = 0; i < mRoster.size(); ++i)
            {
                if (mRoster[i] == name)
                {
                    idx = i;
                    break;
                }
            }
            if (idx == mRoster.size())
            {
                throw ParseError("unknown process name '" + name + "'", start);
            }
            if (set.contains(idx))
            {
                throw ParseError("duplicate process name '" + name + "'",
                                 start);
            }
            set.insert(idx);
        } while (accept(','));
        expect('}');
        return set;
    }

    std::string_view mText;
    Roster const& mRoster;
    std::size_t mPos{0};
};

void
checkRoster(Roster const& roster)
{
    if (roster.empty() || roster.size() > kMaxProcesses)
    {
        throw CapacityError("roster must name between 1 and 64 processes");
    }
    for (std::size_t i = 0; i < roster.size(); ++i)
    {
        for (std::size_t j = i + 1; j < roster.size(); ++j)
        {
            if (roster[i] == roster[j])
            {
                throw std::invalid_argument("duplicate roster name '" +
                                            roster[i] + "'");
            }
        }
    }
}

} // namespace

Roster
defaultRoster(std::size_t n)
{
    Roster r;
    r.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        r.push_back("p" + std::to_string(i + 1));
    }
    return r;
}

TrustExpr
parseTrustExpr(std::string_view text, Roster const& roster)
{
    checkRoster(roster);
    return Parser(text, roster).parseAll();
}

SetFamily
evalTrustExpr(TrustExpr const& expr, std::size_t n)
{
    SetFamily raw(n);
    switch (expr.kind)
    {
    case TrustExpr::Kind::Literal:
        raw.add(expr.names);
        break;
    case TrustExpr::Kind::Threshold:
    {
        std::vector<ProcessId> const names = expr.names.members();
        forEachSubsetOfSize(names.size(), expr.k, [&](ProcessSet const& pick) {
            ProcessSet s(n);
            for (auto pos : pick.members())
            {
                s.insert(names[pos]);
            }
            raw.add(s);
        });
        break;
    }
    case TrustExpr::Kind::Product:
    {
        SetFamily const a = evalTrustExpr(expr.children.at(0), n);
        SetFamily const b = evalTrustExpr(expr.children.at(1), n);
        for (auto const& x : a)
        {
            for (auto const& y : b)
            {
                raw.add(x | y);
            }
        }
        break;
    }
    case TrustExpr::Kind::UnionList:
        for (auto const& child : expr.children)
        {
            for (auto const& s : evalTrustExpr(child, n))
            {
                raw.add(s);
            }
        }
        break;
    }
    return normalizeAntichain(raw);
}

SetFamily
parseFailProne(std::string_view text, Roster const& roster)
{
    return evalTrustExpr(parseTrustExpr(text, roster), roster.size());
}

std::string
formatSet(ProcessSet const& set, Roster const& roster)
{
    std::string out = "{";
    bool first = true;
    for (auto p : set.members())
    {
        if (!first)
        {
            out += ',';
        }
        first = false;
        out += roster.at(p);
    }
    out += '}';
    return out;
}

std::string
formatFamily(SetFamily const& family, Roster const& roster)
{
    if (family.size() == 1)
    {
        return formatSet(family[0], roster);
    }
    std::string out = "[";
    for (std::size_t k = 0; k < family.size(); ++k)
    {
        if (k != 0)
        {
            out += ',';
        }
        out += formatSet(family[k], roster);
    }
    out += ']';
    return out;
}

std::string
formatFamily(SetFamily const& family)
{
    return formatFamily(family, defaultRoster(family.universeSize()));
}

} // namespace asymbft

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "linguine/lexer.hpp"
#include "linguine/parser.hpp"

using namespace linguine;

namespace {

ast::Program parse_text(const std::string& source) {
    return parse(tokenize(source, "<test>"));
}

const char* kAverage =
    "Let numbers be the list [8, 12, 15, 9, 6].\n"
    "Let total be sum of numbers.\n"
    "Let count be length of numbers.\n"
    "Let average be total divided by count.\n"
    "If it is greater than 10:\n"
    "    Print \"Average exceeds ten\".\n"
    "End if.\n";

// First pronoun in statement order, depth-first.
const ast::Expr* find_pronoun(const ast::Expr& e) {
    if (e.kind == ast::Expr::Kind::Pronoun) return &e;
    for (const ast::ExprPtr& a : e.args) {
        if (const ast::Expr* p = find_pronoun(*a)) return p;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("the average sample parses into five statements") {
    ast::Program p = parse_text(kAverage);
    REQUIRE(p.statements.size() == 5);
    const ast::Stmt& cond_stmt = *p.statements[4];
    CHECK(cond_stmt.kind == ast::Stmt::Kind::If);
    const ast::Expr* pronoun = find_pronoun(*cond_stmt.expr);
    REQUIRE(pronoun != nullptr);
    CHECK(pronoun->text == "it");
    CHECK(pronoun->referent == "average");
}

TEST_CASE("an orphan pronoun parses with the unresolved sentinel") {
    ast::Program p = parse_text("Print it.\n");
    REQUIRE(p.statements.size() == 1);
    const ast::Expr* pronoun = find_pronoun(*p.statements[0]->expr);
    REQUIRE(pronoun != nullptr);
    CHECK(pronoun->referent == ast::kUnresolved);
}

TEST_CASE("straight-line rebinding parses; versioning is downstream work") {
    ast::Program p = parse_text("Let x be 1. Let x be 2.");
    CHECK(p.statements.size() == 2);
}

TEST_CASE("referent_push stacks entries in order") {
    ast::ReferentStack stack;
    stack = ast::referent_push(stack, "numbers", Span::at(1, 5, 11, 4, 11));
    REQUIRE(stack.entries.size() == 1);
    CHECK(stack.entries.back().name == "numbers");

    stack = ast::referent_push(stack, "total", Span::at(2, 5, 9, 40, 45));
    CHECK(stack.entries.size() == 2);
    CHECK(stack.entries.back().name == "total");

    // Duplicate names are allowed; SSA versioning disambiguates later.
    stack = ast::referent_push(stack, "total", Span::at(3, 5, 9, 80, 85));
    CHECK(stack.entries.size() == 3);
    CHECK(stack.entries.back().name == "total");
}

TEST_CASE("resolve_pronoun returns the stack top and never mutates") {
    ast::ReferentStack stack;
    for (const char* name : {"numbers", "total", "count", "average"})
        stack = ast::referent_push(stack, name, Span{});
    CHECK(ast::resolve_pronoun(stack, "it") == "average");
    CHECK(stack.entries.size() == 4);

    ast::ReferentStack empty;
    CHECK(ast::resolve_pronoun(empty, "it") == ast::kUnresolved);

    ast::ReferentStack one;
    one = ast::referent_push(one, "numbers", Span{});
    CHECK(ast::resolve_pronoun(one, "them") == "numbers");
}

TEST_CASE("parsing is externally pure: two parses dump identically") {
    TokenStream tokens = tokenize(kAverage, "<test>");
    std::string first = ast::dump_program(parse(tokens));
    std::string second = ast::dump_program(parse(tokens));
    CHECK(first == second);
}

TEST_CASE("the AST dump uses the documented s-expression shape") {
    ast::Program p = parse_text("Let total be sum of numbers.\n");
    CHECK(ast::dump_program(p) == "(let total (sum-of (var numbers)))\n");
}

TEST_CASE("else-if chains nest inside the else block") {
    ast::Program p = parse_text(
        "If 1 is 2:\n"
        "    Print 1.\n"
        "Else if 2 is 3:\n"
        "    Print 2.\n"
        "Else:\n"
        "    Print 3.\n"
        "End if.\n");
    REQUIRE(p.statements.size() == 1);
    const ast::Stmt& outer = *p.statements[0];
    REQUIRE(outer.else_block.has_value());
    REQUIRE(outer.else_block->stmts.size() == 1);
    const ast::Stmt& nested = *outer.else_block->stmts[0];
    CHECK(nested.kind == ast::Stmt::Kind::If);
    CHECK(nested.else_block.has_value());
}

TEST_CASE("pronouns inside a loop body see the loop variable") {
    ast::Program p = parse_text(
        "Let values be the list [1, 2].\n"
        "For each v in values:\n"
        "    Print it.\n"
        "End for.\n");
    const ast::Stmt& loop = *p.statements[1];
    const ast::Expr* pronoun = find_pronoun(*loop.body.stmts[0]->expr);
    REQUIRE(pronoun != nullptr);
    CHECK(pronoun->referent == "v");
}

TEST_CASE("a pronoun in a binding's own value refers to the previous site") {
    ast::Program p = parse_text(
        "Let count be 1.\n"
        "Let next be it plus 1.\n");
    const ast::Expr* pronoun = find_pronoun(*p.statements[1]->expr);
    REQUIRE(pronoun != nullptr);
    CHECK(pronoun->referent == "count");
}

TEST_CASE("operator precedence: multiplication binds tighter") {
    ast::Program p = parse_text("Print 1 plus 2 times 3.\n");
    const ast::Expr& top = *p.statements[0]->expr;
    REQUIRE(top.kind == ast::Expr::Kind::BinOp);
    CHECK(top.bin_op == ast::BinOp::Plus);
    CHECK(top.args[1]->kind == ast::Expr::Kind::BinOp);
    CHECK(top.args[1]->bin_op == ast::BinOp::Times);
}

TEST_CASE("comparisons do not chain") {
    CHECK_THROWS_AS(parse_text("Let f be 1 is 2 is 3.\n"), CompileError);
}

TEST_CASE("a statement missing its period is rejected with the expectation") {
    try {
        parse_text("Let x be 5");
        FAIL("expected a parse error");
    } catch (const CompileError& e) {
        CHECK(e.diagnostic().category == DiagCategory::Parse);
        CHECK(e.diagnostic().message.find("'.'") != std::string::npos);
    }
}

TEST_CASE("an unterminated block is reported as incomplete input") {
    try {
        parse_text("If 1 is 1:\n    Print 1.\n");
        FAIL("expected a parse error");
    } catch (const CompileError& e) {
        CHECK(e.diagnostic().category == DiagCategory::Parse);
        CHECK(e.diagnostic().incomplete_input);
        CHECK(e.diagnostic().message.find("End if.") != std::string::npos);
    }
}

TEST_CASE("unexpected tokens name what was expected") {
    try {
        parse_text("Let be 5.");
        FAIL("expected a parse error");
    } catch (const CompileError& e) {
        CHECK(e.diagnostic().message.find("variable name") !=
              std::string::npos);
        CHECK(e.diagnostic().span.line == 1);
    }
}

TEST_CASE("bare expressions are not statements") {
    CHECK_THROWS_AS(parse_text("2 plus 3.\n"), CompileError);
}

TEST_CASE("the append target must be a variable, not a pronoun") {
    CHECK_THROWS_AS(parse_text("Let xs be the list [1].\nAdd 2 to it.\n"),
                    CompileError);
}

TEST_CASE("empty source parses to an empty program") {
    CHECK(parse_text("").statements.empty());
}

TEST_CASE("reversed binds as a postfix and may repeat") {
    ast::Program p = parse_text("Let s be \"ab\" reversed reversed.\n");
    const ast::Expr& e = *p.statements[0]->expr;
    REQUIRE(e.kind == ast::Expr::Kind::Reversed);
    CHECK(e.args[0]->kind == ast::Expr::Kind::Reversed);
}

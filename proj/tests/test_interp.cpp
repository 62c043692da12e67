#include <sstream>

#include "doctest.h"
#include "linguine/desugar.hpp"
#include "linguine/interp.hpp"
#include "linguine/lexer.hpp"
#include "linguine/parser.hpp"
#include "linguine/ssa.hpp"

using namespace linguine;

namespace {

TypedProgram typed_text(const std::string& source) {
    return infer(desugar(parse(tokenize(source, "<test>"))));
}

std::string run_text(const std::string& source) {
    return run_core(typed_text(source).program).output;
}

}  // namespace

TEST_CASE("a let binds its value in one step") {
    TypedProgram typed = typed_text("Let x be 5. Print x.");
    Config config = make_config(typed.program);
    REQUIRE(config.work.size() == 2);

    CHECK(step(config));
    CHECK(config.work.size() == 1);  // the print remains
    REQUIRE(config.store.count("x"));
    CHECK(config.store.at("x").int_value == 5);
    CHECK(config.output.empty());

    CHECK(step(config));
    CHECK(config.output == "5\n");
    CHECK(!step(config));  // terminal
}

TEST_CASE("a true condition selects the then branch") {
    TypedProgram typed = typed_text(
        "If 1 is 1:\n    Print 1.\nElse:\n    Print 2.\nEnd if.\n");
    Config config = make_config(typed.program);
    CHECK(step(config));           // evaluate the condition, push the branch
    REQUIRE(config.work.size() == 1);
    CHECK(step(config));
    CHECK(config.output == "1\n");
}

TEST_CASE("the empty configuration is terminal") {
    core::Program empty;
    Config config = make_config(empty);
    CHECK(!step(config));
    CHECK(config.steps == 0);
}

TEST_CASE("the average sample prints nothing: ten does not exceed ten") {
    // total 50, count 5, average 10, and 10 > 10 is false.
    CHECK(run_text(
              "Let numbers be the list [8, 12, 15, 9, 6].\n"
              "Let total be sum of numbers.\n"
              "Let count be length of numbers.\n"
              "Let average be total divided by count.\n"
              "If it is greater than 10:\n"
              "    Print \"Average exceeds ten\".\n"
              "End if.\n") == "");
}

TEST_CASE("fizzbuzz over 1..15 matches an independently built transcript") {
    std::ostringstream expected;
    for (int i = 1; i <= 15; ++i) {
        if (i % 15 == 0) expected << "FizzBuzz\n";
        else if (i % 3 == 0) expected << "Fizz\n";
        else if (i % 5 == 0) expected << "Buzz\n";
        else expected << i << '\n';
    }
    CHECK(run_text(
              "Let n be 1.\n"
              "While n less than 16:\n"
              "    Let r3 be n modulo 3.\n"
              "    Let r5 be n modulo 5.\n"
              "    If r3 is 0:\n"
              "        If r5 is 0:\n            Print \"FizzBuzz\".\n"
              "        Else:\n            Print \"Fizz\".\n        End if.\n"
              "    Else if r5 is 0:\n        Print \"Buzz\".\n"
              "    Else:\n        Print n.\n    End if.\n"
              "    Let n be n plus 1.\n"
              "End while.\n") == expected.str());
}

TEST_CASE("printing a small sum") {
    CHECK(run_text("Print 2 plus 3.\n") == "5\n");
}

TEST_CASE("division and modulo floor toward negative infinity") {
    // Same results as the target's // and % operators.
    CHECK(run_text("Let neg be 0 minus 7.\nPrint neg divided by 2.\n") ==
          "-4\n");
    CHECK(run_text("Let neg be 0 minus 7.\nPrint neg modulo 3.\n") == "2\n");
    CHECK(run_text("Print 7 divided by 2.\n") == "3\n");
    CHECK(run_text("Print 7 modulo 3.\n") == "1\n");
}

TEST_CASE("division by zero is a trapped runtime fault with a span") {
    try {
        run_text("Let d be 0.\nPrint 1 divided by d.\n");
        FAIL("expected a runtime fault");
    } catch (const CompileError& e) {
        CHECK(e.diagnostic().category == DiagCategory::Runtime);
        CHECK(e.diagnostic().span.line == 2);
    }
    CHECK_THROWS_AS(run_text("Let d be 0.\nPrint 1 modulo d.\n"),
                    CompileError);
}

TEST_CASE("overflow is a trapped fault, not wraparound") {
    CHECK_THROWS_AS(
        run_text("Let big be 9223372036854775807.\nPrint big plus 1.\n"),
        CompileError);
}

TEST_CASE("a program that never terminates exhausts the step budget") {
    TypedProgram typed = typed_text(
        "Let going be 1.\nWhile going is 1:\n    Let going be 1.\n"
        "End while.\n");
    RunOptions opts;
    opts.max_steps = 1000;
    try {
        run_core(typed.program, opts);
        FAIL("expected a nontermination report");
    } catch (const CompileError& e) {
        CHECK(e.diagnostic().category == DiagCategory::Runtime);
        CHECK(e.diagnostic().message.find("terminate") != std::string::npos);
    }
}

TEST_CASE("print formatting matches the target language conventions") {
    CHECK(run_text("Print \"hello\".\n") == "hello\n");
    CHECK(run_text("Print 1 is 1.\n") == "True\n");
    CHECK(run_text("Print 1 is 2.\n") == "False\n");
    CHECK(run_text("Print the list [1, 2, 3].\n") == "[1, 2, 3]\n");
    CHECK(run_text("Print the list [\"a b\", \"c\"].\n") == "['a b', 'c']\n");
    CHECK(run_text("Print the list [1 is 1].\n") == "[True]\n");
}

TEST_CASE("string repr picks quotes the way the target does") {
    CHECK(repr_value(Value::of_str("plain")) == "'plain'");
    CHECK(repr_value(Value::of_str("it's")) == "\"it's\"");
    CHECK(repr_value(Value::of_str("say \"hi\"")) == "'say \"hi\"'");
    CHECK(repr_value(Value::of_str("back\\slash")) == "'back\\\\slash'");
    CHECK(repr_value(Value::of_str("tab\there")) == "'tab\\there'");
}

TEST_CASE("lists are values: an alias does not see later appends") {
    CHECK(run_text(
              "Let xs be the list [1].\n"
              "Let ys be xs.\n"
              "Add 2 to xs.\n"
              "Print ys.\n"
              "Print xs.\n") == "[1]\n[1, 2]\n");
}

TEST_CASE("reversed works on strings and lists") {
    CHECK(run_text("Print \"pasta\" reversed.\n") == "atsap\n");
    CHECK(run_text("Print [1, 2, 3] reversed.\n") == "[3, 2, 1]\n");
}

TEST_CASE("runs are deterministic") {
    const char* source =
        "Let xs be the list [3, 1, 2].\n"
        "For each x in xs:\n    Print x times x.\nEnd for.\n";
    CHECK(run_text(source) == run_text(source));
}

TEST_CASE("dynamic tags agree with static types across the corpus shapes") {
    const char* sources[] = {
        "Let xs be the list [1, 2].\nAdd 3 to xs.\nPrint xs reversed.\n",
        "Let s be \"pasta\".\nIf s is \"pasta\":\n    Print length of s.\n"
        "End if.\n",
        "Let i be 0.\nWhile i less than 4:\n    Let i be i plus 1.\n"
        "End while.\nPrint i.\n",
    };
    for (const char* source : sources) {
        TypedProgram typed = typed_text(source);
        RunOptions opts;
        opts.check_types = true;
        CHECK_NOTHROW(run_core(typed.program, opts));
        CHECK_NOTHROW(run_ssa(ssa::lower(typed), opts));
    }
}

TEST_CASE("pronoun reads are resolved-name reads over the store") {
    CHECK(run_text("Let x be 4.\nPrint it plus 1.\n") == "5\n");
}

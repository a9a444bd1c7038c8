package q;

// import p.A;
/* import p.A; */

public class B {
    String s = "import p.A;";
}

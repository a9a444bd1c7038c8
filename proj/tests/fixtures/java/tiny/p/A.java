package p;

public class A {
    public int value() { return 1; }
}
